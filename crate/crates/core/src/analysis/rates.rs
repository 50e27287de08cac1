use crate::{Error, Result};

/// Least-squares slope of `log e` against `log h`.
pub fn fit_rate(h: &[f64], e: &[f64]) -> Result<f64> {
    if h.len() != e.len() {
        return Err(Error::InvalidInput("h and error series differ in length".into()));
    }
    if h.len() < 3 {
        return Err(Error::InvalidInput(format!("rate fit needs at least 3 meshes, got {}", h.len())));
    }
    if h.iter().chain(e).any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::InvalidInput("rate fit needs positive finite values".into()));
    }
    let xs: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = e.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidInput("rate fit needs distinct mesh sizes".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}

/// Aitken extrapolation of the last three values of a converging sequence.
pub fn richardson(values: &[f64]) -> Result<f64> {
    let [a, b, c] = match values {
        [.., a, b, c] => [*a, *b, *c],
        _ => return Err(Error::InvalidInput("extrapolation needs three values".into())),
    };
    let denom = (c - b) - (b - a);
    if denom.abs() <= f64::EPSILON * c.abs().max(1.0) {
        return Ok(c);
    }
    Ok(c - (c - b) * (c - b) / denom)
}
