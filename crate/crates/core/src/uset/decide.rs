use crate::arith::lcm_range;
use crate::error::{Error, Result};
use num_traits::ToPrimitive;

/// Largest `n` accepted by [`decide_u_exact`].
pub const EXACT_DECISION_CAP: u64 = 35;

/// Result of the exhaustive decision for one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub n: u64,
    pub member: bool,
    /// For non-members: `w_1, ..., w_{n-1}` with `sum w_k / k = 1/n`.
    pub witness: Option<Vec<i8>>,
}

/// Distinct signed sums of `weights` prefix by prefix; `layers[m]` holds the
/// sums over the first `m` weights, sorted.
fn signed_sum_layers(weights: &[i64], budget: u64, n: u64) -> Result<Vec<Vec<i64>>> {
    let mut layers = vec![vec![0i64]];
    let mut used: u128 = 8;
    for &x in weights {
        let prev = layers.last().unwrap();
        used += prev.len() as u128 * 3 * 8;
        if used > u128::from(budget) {
            return Err(Error::Resource {
                stage: format!("signed sums for n = {n}"),
                needed: used,
                budget,
            });
        }
        let mut next: Vec<i64> = Vec::with_capacity(prev.len() * 3);
        next.extend(prev.iter().map(|v| v - x));
        next.extend_from_slice(prev);
        next.extend(prev.iter().map(|v| v + x));
        next.sort_unstable();
        next.dedup();
        layers.push(next);
    }
    Ok(layers)
}

/// Recovers sign choices reaching `target` from the layered sums.
fn backtrack(layers: &[Vec<i64>], weights: &[i64], mut target: i64) -> Vec<i8> {
    let mut signs = vec![0i8; weights.len()];
    for m in (1..layers.len()).rev() {
        let x = weights[m - 1];
        let below = &layers[m - 1];
        let w = [0i8, 1, -1]
            .into_iter()
            .find(|&w| below.binary_search(&(target - i64::from(w) * x)).is_ok())
            .expect("value must be reachable from the previous layer");
        signs[m - 1] = w;
        target -= i64::from(w) * x;
    }
    debug_assert_eq!(target, 0);
    signs
}

/// Decides whether `1/n` is *not* of the form `sum_{k<n} w_k / k` with
/// `w_k ∈ {-1, 0, 1}`, by meet in the middle over the two halves of
/// `{1, ..., n-1}` scaled by `lcm(1, ..., n)`.
pub fn decide_u_exact(n: u64, budget: u64) -> Result<Decision> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if n > EXACT_DECISION_CAP {
        return Err(Error::CapExceeded {
            what: "n",
            value: n,
            cap: EXACT_DECISION_CAP,
        });
    }
    if n == 1 {
        return Ok(Decision {
            n,
            member: true,
            witness: None,
        });
    }
    let scale = lcm_range(n).to_i64().expect("lcm(1..35) fits in i64");
    let target = scale / n as i64;
    let weights: Vec<i64> = (1..n).map(|k| scale / k as i64).collect();
    let half = weights.len() / 2;
    let (left_w, right_w) = weights.split_at(half);
    let left = signed_sum_layers(left_w, budget, n)?;
    let right = signed_sum_layers(right_w, budget, n)?;
    let left_top = left.last().unwrap();
    let right_top = right.last().unwrap();
    for &a in left_top {
        let need = target - a;
        if right_top.binary_search(&need).is_ok() {
            let mut witness = backtrack(&left, left_w, a);
            witness.extend(backtrack(&right, right_w, need));
            return Ok(Decision {
                n,
                member: false,
                witness: Some(witness),
            });
        }
    }
    Ok(Decision {
        n,
        member: true,
        witness: None,
    })
}
