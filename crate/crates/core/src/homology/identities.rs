//! Structural identities, each checked by computing both sides
//! independently.

use serde::Serialize;

use super::closed_form::{closed_form, ClosedForm};
use super::compute::homology;
use crate::algebra::{analyze_orbit_graph, assemble_f_spindle, FSpindleSpec, Spindle};
use crate::chain::{chain_basis, Variant};
use crate::error::{Error, Result};
use crate::linalg::FGAbelianGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub degree: usize,
    pub lhs: FGAbelianGroup,
    pub rhs: FGAbelianGroup,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityCheck {
    fn new(name: &str, degree: usize, lhs: FGAbelianGroup, rhs: FGAbelianGroup) -> Self {
        let holds = lhs.iso_eq(&rhs);
        IdentityCheck { name: name.to_string(), degree, lhs, rhs, holds, detail: None }
    }

    /// Also requires a chain-level dimension count to match.
    fn with_dimensions(mut self, lhs_dim: usize, rhs_dim: usize) -> Self {
        if lhs_dim != rhs_dim {
            self.holds = false;
            self.detail = Some(format!("chain dimensions differ: {lhs_dim} vs {rhs_dim}"));
        }
        self
    }
}

fn single(spindle: &Spindle, variant: &Variant, n: usize) -> Result<FGAbelianGroup> {
    Ok(homology(spindle.as_shelf(), variant, n, n)?.remove(0))
}

fn sum_all(groups: impl IntoIterator<Item = FGAbelianGroup>) -> FGAbelianGroup {
    groups.into_iter().fold(FGAbelianGroup::trivial(), |acc, g| acc.direct_sum(&g))
}

/// `H_n ≅ HN_n ⊕ HD_n`
pub fn verify_splitting(spindle: &Spindle, n: usize) -> Result<IdentityCheck> {
    let full = single(spindle, &Variant::Full, n)?;
    let normalized = single(spindle, &Variant::Normalized, n)?;
    let degenerate = single(spindle, &Variant::Degenerate, n)?;
    Ok(IdentityCheck::new("splitting", n, full, normalized.direct_sum(&degenerate)))
}

fn normalized_dim(x: usize, q: usize) -> usize {
    x * (x - 1).pow(q as u32)
}

/// `CD_n ≅ ⊕_{p+q=n−2} C̃_p ⊗ CN_q`, checked on dimensions, and its
/// consequence `HD_n ≅ ⊕ H̃_p^{dim CN_q}`.
pub fn verify_degenerate_decomposition(spindle: &Spindle, n: usize) -> Result<IdentityCheck> {
    let x = spindle.size();
    let lhs = single(spindle, &Variant::Degenerate, n)?;
    let lhs_dim = chain_basis(spindle.as_shelf(), n, &Variant::Degenerate)?.len();
    if n == 0 {
        return Ok(IdentityCheck::new("degenerate_decomposition", n, lhs, FGAbelianGroup::trivial())
            .with_dimensions(lhs_dim, 0));
    }
    // p = -1 contributes C̃_{-1} = Z to the dimension and H̃_{-1} = 0 to homology
    let mut rhs_dim = normalized_dim(x, n - 1);
    let mut parts = Vec::new();
    for p in 0..n.saturating_sub(1) {
        let q = n - 2 - p;
        rhs_dim += x.pow(p as u32 + 1) * normalized_dim(x, q);
        parts.push(single(spindle, &Variant::Augmented, p)?.power(normalized_dim(x, q)));
    }
    Ok(IdentityCheck::new("degenerate_decomposition", n, lhs, sum_all(parts)).with_dimensions(lhs_dim, rhs_dim))
}

/// `H_0 ≅ Z ⊕ H̃_0` and `H_n ≅ H̃_n` for `n > 0`.
pub fn verify_augmented(spindle: &Spindle, n: usize) -> Result<IdentityCheck> {
    let full = single(spindle, &Variant::Full, n)?;
    let mut reduced = single(spindle, &Variant::Augmented, n)?;
    if n == 0 {
        reduced = reduced.direct_sum(&FGAbelianGroup::free(1));
    }
    Ok(IdentityCheck::new("augmented", n, full, reduced))
}

/// `H_{n+1} ≅ H_n^{|X|−1} ⊕ H_{n−1}^{|X|}`, for `n ≥ 1`.
pub fn verify_recursion(spindle: &Spindle, n: usize) -> Result<IdentityCheck> {
    if n == 0 {
        return Err(Error::Contract("the recursion starts at n = 1".into()));
    }
    let x = spindle.size();
    let groups = homology(spindle.as_shelf(), &Variant::Full, n - 1, n + 1)?;
    let rhs = groups[1].power(x - 1).direct_sum(&groups[0].power(x));
    Ok(IdentityCheck::new("recursion", n + 1, groups[2].clone(), rhs))
}

/// `HN_n ≅ Hb_n ⊕ H̃b_{n+1}`
pub fn verify_bending_split(spindle: &Spindle, basepoint: usize, n: usize) -> Result<IdentityCheck> {
    let normalized = single(spindle, &Variant::Normalized, n)?;
    let hb = single(spindle, &Variant::BEnding { basepoint, reduced: false }, n)?;
    let reduced = single(spindle, &Variant::BEnding { basepoint, reduced: true }, n + 1)?;
    Ok(IdentityCheck::new("bending_split", n, normalized, hb.direct_sum(&reduced)))
}

/// Homology of `C(X)/C(Y)`, or of `CN(X)/CN(Y)` when `normalized`.
pub fn relative_homology(spindle: &Spindle, subset: &[usize], n: usize, normalized: bool) -> Result<FGAbelianGroup> {
    let variant = Variant::Relative { subset: subset.to_vec(), normalized };
    single(spindle, &variant, n)
}

/// For an f-spindle and `Y = X₀`: `CN_{n+1}(X, X₀) ≅ ⊕_{p+q=n} Cb_p ⊗ C̃N_q(X₀)`
/// on dimensions, and `HN_{n+1}(X, X₀) ≅ ⊕ Hb_p^{dim C̃N_q(X₀)}`, where
/// `q = −1` stands for the empty suffix.
pub fn verify_relative_decomposition(spec: &FSpindleSpec, n: usize) -> Result<IdentityCheck> {
    let spindle = assemble_f_spindle(spec)?;
    let m = spec.base_size();
    let x = m + 1;
    let base: Vec<usize> = (1..=m).collect();
    let lhs = relative_homology(&spindle, &base, n + 1, true)?;
    let variant = Variant::Relative { subset: base, normalized: true };
    let lhs_dim = chain_basis(spindle.as_shelf(), n + 1, &variant)?.len();
    let mut rhs_dim = 0;
    let mut parts = Vec::new();
    for p in 0..=n + 1 {
        // suffix of length n + 1 - p in X₀
        let len = n + 1 - p;
        let suffix_dim = if len == 0 { 1 } else { m * m.saturating_sub(1).pow(len as u32 - 1) };
        rhs_dim += (x - 1).pow(p as u32) * suffix_dim;
        let hb = single(&spindle, &Variant::BEnding { basepoint: 0, reduced: false }, p)?;
        parts.push(hb.power(suffix_dim));
    }
    Ok(IdentityCheck::new("relative_decomposition", n + 1, lhs, sum_all(parts)).with_dimensions(lhs_dim, rhs_dim))
}

/// SNF against the closed forms for `HN`, `H` and `Hb` in degrees `0..=n_max`.
pub fn crosscheck_fspindle(spec: &FSpindleSpec, n_max: usize) -> Result<Vec<IdentityCheck>> {
    let spindle = assemble_f_spindle(spec)?;
    let summary = analyze_orbit_graph(spec).summary();
    let mut checks = Vec::new();
    let forms = [
        ("normalized", ClosedForm::Normalized, Variant::Normalized),
        ("full", ClosedForm::Full, Variant::Full),
        ("bending", ClosedForm::BEnding, Variant::BEnding { basepoint: 0, reduced: false }),
    ];
    for (name, form, variant) in forms {
        let groups = homology(spindle.as_shelf(), &variant, 0, n_max)?;
        for (n, g) in groups.into_iter().enumerate() {
            checks.push(IdentityCheck::new(name, n, g, closed_form(form, &summary, n)?));
        }
    }
    if n_max >= 1 {
        let h1 = single(&spindle, &Variant::Full, 1)?;
        checks.push(IdentityCheck::new("h1", 1, h1, closed_form(ClosedForm::H1, &summary, 1)?));
    }
    Ok(checks)
}
