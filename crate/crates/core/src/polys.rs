//! Polynomial invariants of embedded graphs and the identities relating them.
//!
//! The Las Vergnas polynomial is computed from rank tables only and the
//! Krushkal polynomial from surface parameters only, so comparing them is a
//! genuine cross-check rather than a restatement.

use serde::Serialize;
use thiserror::Error;

use crate::embed::{EmbedError, EmbeddedGraph};
use crate::expand::{expand_with, monomials, tally};
use crate::laurent::{PolyError, VarSet};
use crate::matroid::{MatroidError, Perspective, RankOracle, MAX_GROUND_SET};
use crate::rgraph::{EdgeSubset, RibbonError, RibbonGraph};
use crate::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{0} edges exceed the subset-expansion cap of {MAX_GROUND_SET}")]
    TooLarge(usize),
    #[error("{identity}: right-hand side keeps negative exponents: {poly}")]
    LaurentResidue {
        identity: &'static str,
        poly: String,
    },
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn check_size(m: usize) -> Result<(), InvariantError> {
    if m > MAX_GROUND_SET {
        Err(InvariantError::TooLarge(m))
    } else {
        Ok(())
    }
}

fn var(v: &VarSet, name: &str) -> Poly {
    Poly::var(v, name).expect("variable in fixed set")
}

fn parse(v: &VarSet, s: &str) -> Poly {
    Poly::parse(s, v).expect("fixed substituent")
}

/// Spreads the low `marked.len()` bits of `compact` over the marked edges.
fn deposit(compact: u64, marked: &[usize]) -> EdgeSubset {
    EdgeSubset(
        marked
            .iter()
            .enumerate()
            .filter(|(i, _)| compact >> i & 1 == 1)
            .fold(0, |acc, (_, &e)| acc | 1 << e),
    )
}

/// `Σ_H X^{c(H)-c(G)} Y^{k(H)} A^{s(H)/2} B^{s⊥(H)/2}` over subsets of the marked edges.
pub fn krushkal(g: &EmbeddedGraph) -> Result<Poly, InvariantError> {
    let marked: Vec<usize> = g.marked().iter().collect();
    check_size(marked.len())?;
    let cg = g.c_sub(g.marked())? as i32;
    let t = tally(marked.len(), |compact| {
        let p = g
            .params(deposit(compact, &marked))
            .expect("subset of marked edges");
        assert!(
            p.s.is_multiple_of(2) && p.s_perp.is_multiple_of(2),
            "odd s or s⊥ on an orientable surface"
        );
        [
            p.c as i32 - cg,
            p.k as i32,
            (p.s / 2) as i32,
            (p.s_perp / 2) as i32,
        ]
    });
    Ok(monomials(&VarSet::krushkal(), &t))
}

/// Krushkal polynomial of a map in its own surface.
pub fn krushkal_of_map(g: &RibbonGraph) -> Result<Poly, InvariantError> {
    krushkal(&EmbeddedGraph::cellular(g.clone()))
}

/// Tutte polynomial of the perspective `B(G*) → C(G)`.
pub fn las_vergnas(g: &RibbonGraph) -> Result<Poly, InvariantError> {
    check_size(g.num_edges())?;
    Ok(Perspective::of_map(g)?.tutte())
}

/// `Σ_H (X-1)^{c(H)-c(G)} Y^{n(H)} Z^{c(H)-bc(H)+n(H)}` over spanning ribbon subgraphs.
pub fn bollobas_riordan(g: &RibbonGraph) -> Result<Poly, InvariantError> {
    let m = g.num_edges();
    check_size(m)?;
    let cg = g.counts().c as i32;
    let t = tally(m, |h| {
        let sub = g.restrict(EdgeSubset(h)).expect("subset in range");
        let cnt = sub.counts();
        let n = cnt.e as i32 - cnt.v as i32 + cnt.c as i32;
        let z = cnt.c as i32 - cnt.f as i32 + n;
        assert_eq!(
            z,
            2 * sub.genus() as i32,
            "Z-exponent differs from twice the genus"
        );
        [cnt.c as i32 - cg, n, z]
    });
    let v = VarSet::bollobas_riordan();
    let x1 = &var(&v, "X") - &Poly::one(&v);
    Ok(expand_with(&v, &t, &[x1, var(&v, "Y"), var(&v, "Z")]))
}

/// Tutte polynomial of the underlying graph.
pub fn tutte(g: &RibbonGraph) -> Result<Poly, InvariantError> {
    check_size(g.num_edges())?;
    Ok(RankOracle::cycle_of(g)?.tutte())
}

/// Both sides of one identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: Poly,
    pub rhs: Poly,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn laurent_free(identity: &'static str, p: Poly) -> Result<Poly, InvariantError> {
    if p.has_negative_exponents() {
        Err(InvariantError::LaurentResidue {
            identity,
            poly: p.to_string(),
        })
    } else {
        Ok(p)
    }
}

/// `LV(x,y,z) = z^g P(x-1, y-1, z^-1, z)`.
pub fn verify_main_theorem(g: &RibbonGraph) -> Result<IdentityCheck, InvariantError> {
    const NAME: &str = "main_theorem";
    let lhs = las_vergnas(g)?;
    let v = VarSet::las_vergnas();
    let p = krushkal_of_map(g)?;
    let sub = p.substitute(
        &v,
        &[
            ("X", parse(&v, "x-1")),
            ("Y", parse(&v, "y-1")),
            ("A", parse(&v, "z^-1")),
            ("B", var(&v, "z")),
        ],
    )?;
    let zg = var(&v, "z").pow(g.genus() as u32)?;
    let rhs = laurent_free(NAME, &zg * &sub)?;
    Ok(IdentityCheck {
        name: NAME,
        lhs,
        rhs,
    })
}

/// `BR(X,Y,Z) = Y^g P(X-1, Y, Y Z^2, Y^-1)`.
pub fn verify_br_reduction(g: &RibbonGraph) -> Result<IdentityCheck, InvariantError> {
    const NAME: &str = "br_reduction";
    let lhs = bollobas_riordan(g)?;
    let v = VarSet::bollobas_riordan();
    let p = krushkal_of_map(g)?;
    let sub = p.substitute(
        &v,
        &[
            ("X", parse(&v, "X-1")),
            ("Y", var(&v, "Y")),
            ("A", parse(&v, "Y*Z^2")),
            ("B", parse(&v, "Y^-1")),
        ],
    )?;
    let yg = var(&v, "Y").pow(g.genus() as u32)?;
    let rhs = laurent_free(NAME, &yg * &sub)?;
    Ok(IdentityCheck {
        name: NAME,
        lhs,
        rhs,
    })
}

/// `LV_{G*}(x,y,z) = z^{2g} LV_G(y, x, z^-1)`.
pub fn verify_lv_duality(g: &RibbonGraph) -> Result<IdentityCheck, InvariantError> {
    const NAME: &str = "lv_duality";
    let lhs = las_vergnas(&g.dual())?;
    let v = VarSet::las_vergnas();
    let sub = las_vergnas(g)?.substitute(
        &v,
        &[
            ("x", var(&v, "y")),
            ("y", var(&v, "x")),
            ("z", parse(&v, "z^-1")),
        ],
    )?;
    let z2g = var(&v, "z").pow(2 * g.genus() as u32)?;
    let rhs = laurent_free(NAME, &z2g * &sub)?;
    Ok(IdentityCheck {
        name: NAME,
        lhs,
        rhs,
    })
}

/// `P_{G*}(X,Y,A,B) = P_G(Y,X,B,A)`.
pub fn verify_krushkal_duality(g: &RibbonGraph) -> Result<IdentityCheck, InvariantError> {
    let lhs = krushkal_of_map(&g.dual())?;
    let v = VarSet::krushkal();
    let rhs = krushkal_of_map(g)?.substitute(
        &v,
        &[
            ("X", var(&v, "Y")),
            ("Y", var(&v, "X")),
            ("A", var(&v, "B")),
            ("B", var(&v, "A")),
        ],
    )?;
    Ok(IdentityCheck {
        name: "krushkal_duality",
        lhs,
        rhs,
    })
}

/// Which of the four deletion/contraction relations hold for one edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionContractionReport {
    pub edge: usize,
    /// Neither a bridge nor a loop; otherwise the report is informational.
    pub ordinary: bool,
    /// `P_{G,Σ} = P_{G-e,Σ} + P_{G/e,Σ}` with the deleted graph kept in `Σ`.
    pub krushkal_embedded: bool,
    /// `BR_G = BR_{G-e} + BR_{G/e}` with ribbon deletion.
    pub bollobas_riordan: bool,
    /// `P_{G,Σ} = P_{G-e,Σ'} + P_{G/e,Σ}` with the deleted graph recapped.
    pub krushkal_recapped: bool,
    /// `LV_{G,Σ} = LV_{G-e,Σ'} + LV_{G/e,Σ}` with the deleted graph recapped.
    pub las_vergnas_recapped: bool,
}

impl DeletionContractionReport {
    /// The four relations in display order.
    pub fn pattern(&self) -> [bool; 4] {
        [
            self.krushkal_embedded,
            self.bollobas_riordan,
            self.krushkal_recapped,
            self.las_vergnas_recapped,
        ]
    }
}

pub fn verify_deletion_contraction_case(
    g: &RibbonGraph,
    e: usize,
) -> Result<DeletionContractionReport, InvariantError> {
    let contracted = g.contract(e)?;
    let whole = EmbeddedGraph::cellular(g.clone());
    let kept = whole.delete_embedded(e)?;
    let recapped = kept.recap();
    let deleted = g.delete_ribbon(e)?;

    let p = krushkal(&whole)?;
    let p_c = krushkal_of_map(&contracted)?;
    let p_kept = krushkal(&kept)?;
    let p_recap = krushkal(&recapped)?;
    let br = bollobas_riordan(g)?;
    let br_sum = &bollobas_riordan(&deleted)? + &bollobas_riordan(&contracted)?;
    let lv = las_vergnas(g)?;
    let lv_sum = &las_vergnas(recapped.carrier())? + &las_vergnas(&contracted)?;

    Ok(DeletionContractionReport {
        edge: e,
        ordinary: !g.is_bridge(e) && !g.is_loop(e),
        krushkal_embedded: p == &p_kept + &p_c,
        bollobas_riordan: br == br_sum,
        krushkal_recapped: p == &p_recap + &p_c,
        las_vergnas_recapped: lv == lv_sum,
    })
}

/// Agreement of the topological and matroidal parameters of every subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    /// `k(H)` from the complement's components equals the nullity route.
    pub kernel_two_routes: bool,
    /// `k(H) = n_M(H)` for `M = B(G*)`.
    pub kernel_is_bond_nullity: bool,
    /// `2g = r_M(G) - r_{M'}(G)`.
    pub genus_rank_gap: bool,
    /// `g + s(H)/2 - s⊥(H)/2 = r_M(H) - r_{M'}(H)` for every `H`.
    pub rank_difference: bool,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.kernel_two_routes
            && self.kernel_is_bond_nullity
            && self.genus_rank_gap
            && self.rank_difference
    }
}

pub fn check_lemmas(g: &RibbonGraph) -> Result<LemmaReport, InvariantError> {
    check_size(g.num_edges())?;
    let e = EmbeddedGraph::cellular(g.clone());
    let p = Perspective::of_map(g)?;
    let (m, mp) = (p.source(), p.target());
    let genus = g.genus() as i64;
    let mut report = LemmaReport {
        kernel_two_routes: true,
        kernel_is_bond_nullity: true,
        genus_rank_gap: 2 * genus == m.rank_all() as i64 - mp.rank_all() as i64,
        rank_difference: true,
    };
    for h in g.all_edges().subsets() {
        let params = e.params(h)?;
        let k = params.k as i64;
        report.kernel_two_routes &= k == e.k_param_via_nullity(h)?;
        report.kernel_is_bond_nullity &= k == m.nullity(h) as i64;
        let lhs = 2 * genus + params.s as i64 - params.s_perp as i64;
        let rhs = 2 * (m.rank(h) as i64 - mp.rank(h) as i64);
        report.rank_difference &= lhs == rhs;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn k(s: &str) -> Poly {
        Poly::parse(s, &VarSet::krushkal()).unwrap()
    }
    fn lv(s: &str) -> Poly {
        Poly::parse(s, &VarSet::las_vergnas()).unwrap()
    }
    fn br(s: &str) -> Poly {
        Poly::parse(s, &VarSet::bollobas_riordan()).unwrap()
    }

    #[test]
    fn krushkal_examples() {
        assert_eq!(
            krushkal_of_map(&catalog::two_loop_torus()).unwrap(),
            k("B+2+A")
        );
        assert_eq!(
            krushkal_of_map(&catalog::theta_torus()).unwrap(),
            k("3+3*B+X*B+A")
        );
        let kept = EmbeddedGraph::cellular(catalog::theta_torus())
            .delete_embedded(2)
            .unwrap();
        assert_eq!(krushkal(&kept).unwrap(), k("X*B+2*B+1"));
        assert_eq!(krushkal_of_map(&RibbonGraph::empty(1)).unwrap(), k("1"));
    }

    #[test]
    fn one_loop_kept_on_the_torus() {
        // H = ∅: c=1, k=0, s=0, s⊥=2; H = {a}: s⊥ = 0 since the complement
        // of one essential loop in the torus is an annulus.
        let kept = EmbeddedGraph::cellular(catalog::two_loop_torus())
            .delete_embedded(1)
            .unwrap();
        assert_eq!(krushkal(&kept).unwrap(), k("B+1"));
    }

    #[test]
    fn las_vergnas_examples() {
        assert_eq!(
            las_vergnas(&catalog::two_loop_torus()).unwrap(),
            lv("z^2+2*z+1")
        );
        let g = catalog::theta_torus();
        let recapped = EmbeddedGraph::cellular(g.clone())
            .delete_embedded(2)
            .unwrap()
            .recap();
        assert_eq!(las_vergnas(recapped.carrier()).unwrap(), lv("x+y"));
        assert_eq!(
            las_vergnas(&g.contract(2).unwrap()).unwrap(),
            lv("z^2+2*z+1")
        );
    }

    #[test]
    fn bollobas_riordan_examples() {
        let g = catalog::theta_torus();
        assert_eq!(bollobas_riordan(&g).unwrap(), br("X+2+3*Y+Y^2*Z^2"));
        assert_eq!(
            bollobas_riordan(&g.contract(2).unwrap()).unwrap(),
            br("1+2*Y+Y^2*Z^2")
        );
        assert_eq!(
            bollobas_riordan(&g.delete_ribbon(2).unwrap()).unwrap(),
            br("X+1+Y")
        );
    }

    #[test]
    fn identities_on_small_maps() {
        for g in [
            catalog::two_loop_torus(),
            catalog::theta_torus(),
            catalog::single_edge(),
            catalog::single_loop(),
        ] {
            assert!(verify_main_theorem(&g).unwrap().holds(), "{g:?}");
            assert!(verify_br_reduction(&g).unwrap().holds(), "{g:?}");
            assert!(verify_lv_duality(&g).unwrap().holds(), "{g:?}");
            assert!(verify_krushkal_duality(&g).unwrap().holds(), "{g:?}");
            assert!(check_lemmas(&g).unwrap().holds(), "{g:?}");
        }
    }

    #[test]
    fn identity_sides() {
        let m = verify_br_reduction(&catalog::two_loop_torus()).unwrap();
        assert_eq!(m.rhs, br("1+2*Y+Y^2*Z^2"));
        let e = verify_br_reduction(&catalog::single_edge()).unwrap();
        assert_eq!(e.lhs, br("X"));
        let d = verify_lv_duality(&catalog::two_loop_torus()).unwrap();
        assert_eq!(d.rhs, lv("1+2*z+z^2"));
        let kd = verify_krushkal_duality(&catalog::theta_torus()).unwrap();
        assert_eq!(kd.lhs, k("3+3*A+Y*A+B"));
        assert_eq!(krushkal_of_map(&catalog::single_loop()).unwrap(), k("1+Y"));
        assert_eq!(krushkal_of_map(&catalog::single_edge()).unwrap(), k("X+1"));
    }

    #[test]
    fn deletion_contraction_pattern() {
        let r = verify_deletion_contraction_case(&catalog::theta_torus(), 2).unwrap();
        assert!(r.ordinary);
        assert_eq!(r.pattern(), [true, true, false, false]);
        let b = verify_deletion_contraction_case(&catalog::single_edge(), 0).unwrap();
        assert!(!b.ordinary);
    }

    #[test]
    fn oversized_maps_are_rejected() {
        let rot: Vec<usize> = (0..50).collect();
        let g = RibbonGraph::from_rotations(&[rot]).unwrap();
        assert_eq!(las_vergnas(&g), Err(InvariantError::TooLarge(25)));
        assert_eq!(krushkal_of_map(&g), Err(InvariantError::TooLarge(25)));
    }
}
