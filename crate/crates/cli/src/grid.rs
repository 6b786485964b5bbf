use anyhow::{bail, Context, Result};

/// Expands list items that are plain numbers or `start:stop:step` ranges
/// (inclusive of `stop` up to rounding).
pub fn expand(items: &[String]) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in items {
        let parts: Vec<&str> = item.split(':').collect();
        let num = |s: &str| -> Result<f64> { s.trim().parse().with_context(|| format!("invalid number `{s}`")) };
        match parts.as_slice() {
            [v] => out.push(num(v)?),
            [start, stop, step] => {
                let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
                if !(step > 0.0) || stop < start {
                    bail!("invalid range `{item}`");
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize;
                // round to kill accumulated representation noise
                out.extend((0..=count).map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12));
            }
            _ => bail!("invalid grid item `{item}`"),
        }
    }
    Ok(out)
}
