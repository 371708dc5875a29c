//! Seeded random posets and exhaustive enumeration of small labeled posets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_size, Result};
use crate::order::{FinitePoset, Suborder};

/// Largest `n` accepted by [`all_labeled_posets`].
pub const MAX_LABELED: usize = 5;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each unordered pair is related with probability `density`, oriented by a
/// random linear order so the closure never has a cycle.
pub fn random_poset<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Result<FinitePoset> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut rank = vec![0; n];
    for (r, &x) in perm.iter().enumerate() {
        rank[x] = r;
    }
    let mut rel = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(density.clamp(0.0, 1.0)) {
                rel.push(if rank[a] < rank[b] { (a, b) } else { (b, a) });
            }
        }
    }
    FinitePoset::new(n, &rel)
}

/// A uniformly random nonempty subset of `p`.
pub fn random_suborder<R: Rng + ?Sized>(p: &FinitePoset, rng: &mut R) -> Suborder {
    loop {
        let members: Vec<usize> = (0..p.size()).filter(|_| rng.random_bool(0.5)).collect();
        if !members.is_empty() {
            return Suborder::new(p, members).expect("indices in range");
        }
    }
}

/// Every partial order on `{0, …, n-1}`, in increasing order of the strict
/// relation read as a bitmask.
pub fn all_labeled_posets(n: usize) -> Result<Vec<FinitePoset>> {
    check_size("labeled poset enumeration", n as u128, MAX_LABELED as u128)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        // rows[a] = strict upper set of a
        let mut rows = vec![0u32; n];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                rows[a] |= 1 << b;
            }
        }
        let transitive = (0..n).all(|a| {
            let mut reach = 0;
            for b in 0..n {
                if rows[a] >> b & 1 == 1 {
                    reach |= rows[b];
                }
            }
            reach & !rows[a] == 0 && rows[a] >> a & 1 == 0
        });
        if transitive {
            let rel: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            out.push(FinitePoset::new(n, &rel)?);
        }
    }
    Ok(out)
}

/// All nonempty suborders of `p`, by increasing member mask.
pub fn all_suborders(p: &FinitePoset) -> Vec<Suborder> {
    let n = p.size();
    (1u64..1 << n)
        .map(|m| Suborder::new(p, (0..n).filter(|&i| m >> i & 1 == 1)).expect("indices in range"))
        .collect()
}
