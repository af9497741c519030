//! Subset-expansion tallies.
//!
//! Every invariant here is a sum over edge subsets of a product of powers.
//! The per-subset exponent tuples are tallied first and only then turned
//! into polynomials, so the expensive part is a plain integer count that can
//! be split across threads and merged in any order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::laurent::{LaurentPoly, VarSet};
use crate::Poly;

/// Below this many edges the tally runs on the calling thread.
const PARALLEL_THRESHOLD: usize = 14;

pub type Tally<const K: usize> = BTreeMap<[i32; K], u64>;

/// Counts the exponent tuples `f(H)` over all subsets `H` of `0..n`.
pub fn tally<const K: usize, F>(n: usize, f: F) -> Tally<K>
where
    F: Fn(u64) -> [i32; K] + Sync,
{
    assert!(n < 64);
    let total = 1u64 << n;
    if n < PARALLEL_THRESHOLD {
        let mut out = Tally::new();
        for h in 0..total {
            *out.entry(f(h)).or_insert(0) += 1;
        }
        return out;
    }
    const CHUNK: u64 = 1 << 12;
    (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .fold(Tally::new, |mut acc, chunk| {
            let hi = ((chunk + 1) * CHUNK).min(total);
            for h in chunk * CHUNK..hi {
                *acc.entry(f(h)).or_insert(0) += 1;
            }
            acc
        })
        .reduce(Tally::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

/// Reads a tally directly as monomials with count coefficients.
pub fn monomials<const K: usize>(vars: &VarSet, t: &Tally<K>) -> Poly {
    LaurentPoly::from_terms(vars, t.iter().map(|(e, &c)| (e.to_vec(), BigInt::from(c))))
        .expect("tally arity matches the variable set")
}

/// Reads a tally as a sum of `count * prod_i base_i^e_i`.
pub fn expand_with<const K: usize>(vars: &VarSet, t: &Tally<K>, bases: &[Poly; K]) -> Poly {
    let mut out = Poly::zero(vars);
    for (exps, &count) in t {
        let mut term = Poly::constant(vars, BigInt::from(count));
        for (b, &e) in bases.iter().zip(exps) {
            let p = b
                .powi(e)
                .expect("negative powers only of unit monomials")
                .expect("power");
            term = &term * &p;
        }
        out = &out + &term;
    }
    out
}
