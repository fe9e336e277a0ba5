use crate::error::{Error, Result};

/// Lower and upper bound on the probability that a vertex is a border vertex
/// when inter-community links appear independently with probability `p`:
/// `1 − e^{−(|V| − n_L)·p}` and `1 − e^{−(|V| − n_S)·p}`, with `n_S`, `n_L`
/// the smallest and largest community sizes.
pub fn border_probability_bounds(total_vertices: usize, smallest: usize, largest: usize, p: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("link probability {p} not in [0, 1]")));
    }
    if smallest < 1 || smallest > largest || largest > total_vertices {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= n_S <= n_L <= |V|, got n_S={smallest}, n_L={largest}, |V|={total_vertices}"
        )));
    }
    let bound = |outside: usize| 1.0 - (-(outside as f64) * p).exp();
    Ok((bound(total_vertices - largest), bound(total_vertices - smallest)))
}
