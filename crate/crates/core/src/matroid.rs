//! Matroids given by complete rank tables.
//!
//! Cycle and bond matroids of graphs, duals, circuits, matroid perspectives
//! and the Tutte polynomials of both. The perspective polynomial of
//! `B(G*) → C(G)` is the Las Vergnas polynomial of a map.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::expand::{expand_with, tally};
use crate::laurent::VarSet;
use crate::rgraph::{Dsu, EdgeSubset, Multigraph, RibbonGraph};
use crate::Poly;

/// Largest ground set whose rank table is materialized.
pub const MAX_GROUND_SET: usize = 24;
/// Largest ground set on which axioms and perspectives are checked exhaustively.
pub const EXHAUSTIVE_CHECK: usize = 12;
/// Largest ground set for circuit enumeration.
pub const MAX_CIRCUIT_GROUND_SET: usize = 16;
/// Largest ground set on which the circuit form of the perspective condition is re-checked.
pub const CIRCUIT_PERSPECTIVE_CHECK: usize = 10;

const SAMPLED_CHECKS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("ground set of {n} elements exceeds the cap of {cap}")]
    GroundSetTooLarge { n: usize, cap: usize },
    #[error("rank table has {got} entries, expected {expected}")]
    IncompleteTable { expected: usize, got: usize },
    #[error("axiom {axiom} fails at subset {subset:#x}: {detail}")]
    AxiomViolation {
        axiom: &'static str,
        subset: u64,
        detail: String,
    },
    #[error("ground sets differ: {0} vs {1}")]
    GroundSetMismatch(usize, usize),
    #[error("not a matroid perspective: Y={y:#x} ⊆ X={x:#x} has r_M(X)-r_M(Y)={dm} < r_M'(X)-r_M'(Y)={dmp}")]
    NotAPerspective { y: u64, x: u64, dm: i32, dmp: i32 },
    #[error("rank table syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// A matroid on `0..n` as a table of `2^n` ranks.
#[derive(Clone, PartialEq, Eq)]
pub struct RankOracle {
    n: usize,
    ranks: Vec<u8>,
}

impl std::fmt::Debug for RankOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RankOracle(n={}, rank={})", self.n, self.rank_all())
    }
}

fn check_size(n: usize, cap: usize) -> Result<(), MatroidError> {
    if n > cap {
        Err(MatroidError::GroundSetTooLarge { n, cap })
    } else {
        Ok(())
    }
}

impl RankOracle {
    /// Builds an oracle from a complete table and checks R1–R3.
    pub fn from_table(n: usize, ranks: Vec<u8>) -> Result<Self, MatroidError> {
        check_size(n, MAX_GROUND_SET)?;
        if ranks.len() != 1 << n {
            return Err(MatroidError::IncompleteTable {
                expected: 1 << n,
                got: ranks.len(),
            });
        }
        let m = RankOracle { n, ranks };
        m.check_axioms()?;
        Ok(m)
    }

    fn from_fn(n: usize, f: impl Fn(u64) -> u8) -> Result<Self, MatroidError> {
        check_size(n, MAX_GROUND_SET)?;
        Ok(RankOracle {
            n,
            ranks: (0..1u64 << n).map(f).collect(),
        })
    }

    /// Every subset independent.
    pub fn free(n: usize) -> Result<Self, MatroidError> {
        Self::from_fn(n, |h| h.count_ones() as u8)
    }

    /// Rank zero everywhere.
    pub fn loops(n: usize) -> Result<Self, MatroidError> {
        Self::from_fn(n, |_| 0)
    }

    /// Cycle matroid: `r(H) = v - c(H)`.
    pub fn cycle(g: &Multigraph) -> Result<Self, MatroidError> {
        Self::from_fn(g.edges.len(), |h| {
            let mut dsu = Dsu::new(g.vertices);
            for (i, &(a, b)) in g.edges.iter().enumerate() {
                if h >> i & 1 == 1 {
                    dsu.union(a, b);
                }
            }
            (g.vertices - dsu.sets()) as u8
        })
    }

    /// Bond matroid: dual of the cycle matroid.
    pub fn bond(g: &Multigraph) -> Result<Self, MatroidError> {
        Ok(Self::cycle(g)?.dual())
    }

    pub fn cycle_of(g: &RibbonGraph) -> Result<Self, MatroidError> {
        Self::cycle(&g.underlying())
    }

    pub fn bond_of(g: &RibbonGraph) -> Result<Self, MatroidError> {
        Self::bond(&g.underlying())
    }

    /// `r*(H) = |H| + r(E \ H) - r(E)`.
    pub fn dual(&self) -> RankOracle {
        let full = EdgeSubset::full(self.n).bits();
        let total = self.rank_all() as i32;
        let d = RankOracle {
            n: self.n,
            ranks: (0..1u64 << self.n)
                .map(|h| {
                    let r = h.count_ones() as i32 + self.ranks[(full & !h) as usize] as i32 - total;
                    debug_assert!(r >= 0);
                    r as u8
                })
                .collect(),
        };
        assert_eq!(d.rank_all() + self.rank_all(), self.n);
        d
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rank(&self, h: EdgeSubset) -> usize {
        self.ranks[h.bits() as usize] as usize
    }

    fn r(&self, h: u64) -> i32 {
        self.ranks[h as usize] as i32
    }

    pub fn rank_all(&self) -> usize {
        self.ranks[self.ranks.len() - 1] as usize
    }

    /// `|H| - r(H)`.
    pub fn nullity(&self, h: EdgeSubset) -> usize {
        h.len() - self.rank(h)
    }

    pub fn ground(&self) -> EdgeSubset {
        EdgeSubset::full(self.n)
    }

    /// R1–R3; exhaustive up to [`EXHAUSTIVE_CHECK`] elements, sampled above.
    pub fn check_axioms(&self) -> Result<(), MatroidError> {
        if self.r(0) != 0 {
            return Err(MatroidError::AxiomViolation {
                axiom: "R1",
                subset: 0,
                detail: format!("r(∅) = {}", self.r(0)),
            });
        }
        if self.n <= EXHAUSTIVE_CHECK {
            for h in 0..1u64 << self.n {
                for y in 0..self.n {
                    if h >> y & 1 == 0 {
                        self.check_r2(h, y)?;
                        for z in y + 1..self.n {
                            if h >> z & 1 == 0 {
                                self.check_r3(h, y, z)?;
                            }
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            let full = EdgeSubset::full(self.n).bits();
            for _ in 0..SAMPLED_CHECKS {
                let h = rng.gen::<u64>() & full;
                let y = rng.gen_range(0..self.n);
                let z = rng.gen_range(0..self.n);
                let h = h & !(1 << y) & !(1 << z);
                self.check_r2(h, y)?;
                if y != z {
                    self.check_r3(h, y, z)?;
                }
            }
        }
        Ok(())
    }

    fn check_r2(&self, h: u64, y: usize) -> Result<(), MatroidError> {
        let d = self.r(h | 1 << y) - self.r(h);
        if d == 0 || d == 1 {
            Ok(())
        } else {
            Err(MatroidError::AxiomViolation {
                axiom: "R2",
                subset: h,
                detail: format!("adding element {y} changes rank by {d}"),
            })
        }
    }

    fn check_r3(&self, h: u64, y: usize, z: usize) -> Result<(), MatroidError> {
        let r = self.r(h);
        if self.r(h | 1 << y) == r && self.r(h | 1 << z) == r && self.r(h | 1 << y | 1 << z) != r {
            return Err(MatroidError::AxiomViolation {
                axiom: "R3",
                subset: h,
                detail: format!("elements {y} and {z} are each spanned but not jointly"),
            });
        }
        Ok(())
    }

    /// Maximal independent sets.
    pub fn bases(&self) -> Vec<EdgeSubset> {
        let r = self.rank_all() as u32;
        (0..1u64 << self.n)
            .filter(|&h| h.count_ones() == r && self.r(h) as u32 == r)
            .map(EdgeSubset)
            .collect()
    }

    /// Bases of the dual are exactly the complements of bases.
    pub fn check_base_complement(&self) -> bool {
        let mut comp: Vec<EdgeSubset> = self
            .bases()
            .into_iter()
            .map(|b| b.complement(self.n))
            .collect();
        comp.sort();
        comp == self.dual().bases()
    }

    /// Minimal dependent sets, in increasing bitmask order.
    pub fn circuits(&self) -> Result<Vec<EdgeSubset>, MatroidError> {
        check_size(self.n, MAX_CIRCUIT_GROUND_SET)?;
        let independent = |h: u64| self.r(h) as u32 == h.count_ones();
        Ok((1..1u64 << self.n)
            .filter(|&h| {
                !independent(h) && EdgeSubset(h).iter().all(|e| independent(h & !(1 << e)))
            })
            .map(EdgeSubset)
            .collect())
    }

    /// Corank-nullity expansion in `(x, y)`.
    pub fn tutte(&self) -> Poly {
        let total = self.rank_all() as i32;
        let t = tally(self.n, |h| {
            let r = self.r(h);
            [total - r, h.count_ones() as i32 - r]
        });
        let v = VarSet::tutte();
        expand_with(&v, &t, &[shifted(&v, "x"), shifted(&v, "y")])
    }

    /// Text form: `matroid n=<n>` followed by one `<hex mask> <rank>` line per subset.
    pub fn to_table(&self) -> String {
        let mut s = format!("matroid n={}\n", self.n);
        for (h, r) in self.ranks.iter().enumerate() {
            writeln!(s, "{h:x} {r}").expect("write to string");
        }
        s
    }

    /// Parses the text form; the table must be complete and satisfy R1–R3.
    pub fn parse_table(text: &str) -> Result<Self, MatroidError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or(MatroidError::Syntax {
            line: 1,
            msg: "missing header".into(),
        })?;
        let n: usize = header
            .strip_prefix("matroid")
            .and_then(|r| r.trim().strip_prefix("n="))
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| MatroidError::Syntax {
                line: ln,
                msg: "expected `matroid n=<int>`".into(),
            })?;
        check_size(n, MAX_GROUND_SET)?;
        let mut ranks: Vec<Option<u8>> = vec![None; 1 << n];
        for (ln, line) in lines {
            let syntax = |msg: &str| MatroidError::Syntax {
                line: ln,
                msg: msg.to_string(),
            };
            let mut parts = line.split_whitespace();
            let (Some(mask), Some(rank), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(syntax("expected `<hex mask> <rank>`"));
            };
            let mask = u64::from_str_radix(mask.trim_start_matches("0x"), 16)
                .map_err(|_| syntax("bad mask"))?;
            let rank: u8 = rank.parse().map_err(|_| syntax("bad rank"))?;
            let slot = ranks
                .get_mut(mask as usize)
                .ok_or_else(|| syntax("mask outside the ground set"))?;
            if slot.replace(rank).is_some() {
                return Err(syntax("duplicate mask"));
            }
        }
        let got = ranks.iter().filter(|r| r.is_some()).count();
        if got != ranks.len() {
            return Err(MatroidError::IncompleteTable {
                expected: ranks.len(),
                got,
            });
        }
        Self::from_table(n, ranks.into_iter().map(Option::unwrap).collect())
    }
}

fn shifted(v: &VarSet, name: &str) -> Poly {
    &Poly::var(v, name).expect("known variable") - &Poly::one(v)
}

/// A bijection `M → M'` on a shared ground set, verified to be a perspective.
#[derive(Clone, Debug)]
pub struct Perspective {
    m: RankOracle,
    mp: RankOracle,
}

/// Outcome of the two Tutte recovery identities for a perspective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryReport {
    /// `T_M(x,y) = T_{M→M'}(x,y,x-1)`.
    pub source: bool,
    /// `T_{M'}(x,y) = (y-1)^{r(M)-r(M')} T_{M→M'}(x,y,1/(y-1))`, denominators cleared.
    pub target: bool,
    pub diagnostic: Option<String>,
}

impl RecoveryReport {
    pub fn holds(&self) -> bool {
        self.source && self.target
    }
}

impl Perspective {
    /// Checks the rank inequality on all nested pairs (exhaustively up to
    /// [`EXHAUSTIVE_CHECK`] elements, by single-element steps above) and the
    /// circuit form up to [`CIRCUIT_PERSPECTIVE_CHECK`] elements.
    pub fn new(m: RankOracle, mp: RankOracle) -> Result<Self, MatroidError> {
        if m.n != mp.n {
            return Err(MatroidError::GroundSetMismatch(m.n, mp.n));
        }
        let n = m.n;
        let violation = |y: u64, x: u64| {
            let dm = m.r(x) - m.r(y);
            let dmp = mp.r(x) - mp.r(y);
            (dm < dmp).then_some(MatroidError::NotAPerspective { y, x, dm, dmp })
        };
        if n <= EXHAUSTIVE_CHECK {
            for x in 0..1u64 << n {
                for y in EdgeSubset(x).subsets() {
                    if let Some(err) = violation(y.bits(), x) {
                        return Err(err);
                    }
                }
            }
        } else {
            for y in 0..1u64 << n {
                for e in 0..n {
                    if y >> e & 1 == 0 {
                        if let Some(err) = violation(y, y | 1 << e) {
                            return Err(err);
                        }
                    }
                }
            }
        }
        if n <= CIRCUIT_PERSPECTIVE_CHECK {
            // each circuit of M must be a union of circuits of M': every
            // element lies in the closure of the rest
            for c in m.circuits()? {
                for e in c.iter() {
                    let rest = c.without(e);
                    if mp.rank(rest) != mp.rank(c) {
                        return Err(violation(rest.bits(), c.bits())
                            .expect("circuit failure implies a rank witness"));
                    }
                }
            }
        }
        Ok(Perspective { m, mp })
    }

    /// `B(G*) → C(G)`, identifying edges by their shared index.
    pub fn of_map(g: &RibbonGraph) -> Result<Self, MatroidError> {
        Self::new(RankOracle::bond_of(&g.dual())?, RankOracle::cycle_of(g)?)
    }

    pub fn source(&self) -> &RankOracle {
        &self.m
    }

    pub fn target(&self) -> &RankOracle {
        &self.mp
    }

    /// Three-variable Tutte polynomial in `(x, y, z)`.
    pub fn tutte(&self) -> Poly {
        let rm = self.m.rank_all() as i32;
        let rmp = self.mp.rank_all() as i32;
        let t = tally(self.m.n, |h| {
            let a = rmp - self.mp.r(h);
            let b = h.count_ones() as i32 - self.m.r(h);
            let c = (rm - self.m.r(h)) - a;
            [a, b, c]
        });
        let v = VarSet::las_vergnas();
        expand_with(
            &v,
            &t,
            &[
                shifted(&v, "x"),
                shifted(&v, "y"),
                Poly::var(&v, "z").expect("z"),
            ],
        )
    }

    /// Checks both recovery identities against independently computed
    /// Tutte polynomials of `M` and `M'`.
    pub fn verify_tutte_recovery(&self) -> RecoveryReport {
        let lv = VarSet::las_vergnas();
        let tv = VarSet::tutte();
        let t3 = self.tutte();
        let mut diagnostic = Vec::new();

        let x = Poly::var(&tv, "x").expect("x");
        let y = Poly::var(&tv, "y").expect("y");
        let source_side = t3
            .substitute(
                &tv,
                &[("x", x.clone()), ("y", y.clone()), ("z", shifted(&tv, "x"))],
            )
            .expect("polynomial substitution");
        let tm = self.m.tutte();
        let source = source_side == tm;
        if !source {
            diagnostic.push(format!("T_M = {tm} but T_(M→M')(x,y,x-1) = {source_side}"));
        }

        // z^j becomes (y-1)^(d-j) once the prefactor (y-1)^d is absorbed
        let d = self.m.rank_all() as i32 - self.mp.rank_all() as i32;
        let zi = lv.index_of("z").expect("z");
        let ym1 = shifted(&tv, "y");
        let mut cleared = Poly::zero(&tv);
        let mut in_range = true;
        for (exps, c) in t3.terms() {
            let j = exps[zi];
            if j < 0 || j > d {
                in_range = false;
                diagnostic.push(format!("z-exponent {j} outside 0..={d}"));
                break;
            }
            let mono = Poly::monomial(&tv, &exps[..2], c.clone()).expect("monomial");
            cleared = &cleared + &(&mono * &ym1.pow((d - j) as u32).expect("power"));
        }
        let tmp = self.mp.tutte();
        let target = in_range && cleared == tmp;
        if in_range && !target {
            diagnostic.push(format!(
                "T_M' = {tmp} but (y-1)^{d} T_(M→M')(x,y,1/(y-1)) = {cleared}"
            ));
        }
        RecoveryReport {
            source,
            target,
            diagnostic: (!diagnostic.is_empty()).then(|| diagnostic.join("; ")),
        }
    }
}

/// Convenience: `Σ_H (x-1)^{r(E)-r(H)} (y-1)^{|H|-r(H)}` for a map's cycle matroid.
pub fn tutte_of_map(g: &RibbonGraph) -> Result<Poly, MatroidError> {
    Ok(RankOracle::cycle_of(g)?.tutte())
}
