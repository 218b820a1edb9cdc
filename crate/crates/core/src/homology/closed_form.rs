//! Closed forms for f-spindles and block spindles. These see only orbit
//! counts, never operation tables, so comparing them with SNF results is a
//! genuinely two-sided check.

use serde::{Deserialize, Serialize};

use crate::algebra::{analyze_orbit_graph, BlockSpindleSpec, FSpindleSpec, OrbitSummary};
use crate::error::{Error, Result};
use crate::linalg::FGAbelianGroup;

/// Which closed form to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    /// `H_1` of the full complex.
    H1,
    /// `HN_n`
    Normalized,
    /// `H_n` of the full complex.
    Full,
    /// `Hb_n`, normalized tuples ending in `b`.
    BEnding,
}

pub fn closed_form(form: ClosedForm, summary: &OrbitSummary, n: usize) -> Result<FGAbelianGroup> {
    match form {
        ClosedForm::H1 => closed_form_h1_fspindle(summary),
        ClosedForm::Normalized => closed_form_hn_fspindle(summary, n),
        ClosedForm::Full => closed_form_full_fspindle(summary, n),
        ClosedForm::BEnding => closed_form_hb_fspindle(summary, n),
    }
}

fn check(summary: &OrbitSummary) -> Result<()> {
    if summary.base_size > 0 && (summary.ell == 0 || summary.orbits == 0) {
        return Err(Error::Contract(format!(
            "a nonempty functional graph has a cycle, but got orb = {} and ℓ = {}",
            summary.orbits, summary.ell
        )));
    }
    if summary.initial > summary.base_size || summary.orbits > summary.base_size.max(1) {
        return Err(Error::Contract(format!("inconsistent orbit summary {summary:?}")));
    }
    Ok(())
}

fn rank(value: i128) -> Result<usize> {
    usize::try_from(value).map_err(|_| Error::Contract(format!("closed form gave rank {value}")))
}

fn pow(base: usize, exp: usize) -> Result<usize> {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .ok_or_else(|| Error::Unsupported(format!("multiplicity {base}^{exp} is too large")))
}

/// `Z^free ⊕ Z_ℓ^count`
fn group(summary: &OrbitSummary, free: i128, count: usize) -> Result<FGAbelianGroup> {
    let torsion = if count == 0 { Vec::new() } else { vec![summary.ell; count] };
    Ok(FGAbelianGroup::new(rank(free)?, torsion))
}

/// `H_1 = Z^{|X₀|(orb−1) + 2 orb} ⊕ Z_ℓ^{init}`
pub fn closed_form_h1_fspindle(summary: &OrbitSummary) -> Result<FGAbelianGroup> {
    check(summary)?;
    let (m, orb) = (summary.base_size as i128, summary.orbits as i128);
    group(summary, m * (orb - 1) + 2 * orb, summary.initial)
}

/// `HN_0 = Z^{orb+1}`, `HN_1 = H_1`, and for `n ≥ 2`
/// `HN_n = (Z^{(orb−1)|X|² + |X|} ⊕ Z_ℓ^{init·|X|})^{(|X|−1)^{n−2}}`.
pub fn closed_form_hn_fspindle(summary: &OrbitSummary, n: usize) -> Result<FGAbelianGroup> {
    check(summary)?;
    let orb = summary.orbits as i128;
    let x = summary.carrier_size();
    match n {
        0 => group(summary, orb + 1, 0),
        1 => closed_form_h1_fspindle(summary),
        _ => {
            let xi = x as i128;
            let unit = group(summary, (orb - 1) * xi * xi + xi, summary.initial * x)?;
            Ok(unit.power(pow(x - 1, n - 2)?))
        }
    }
}

/// `H_0 = Z^{orb+1}` and `H_n = (Z^{orb(|X|+1) − (|X|−1)} ⊕ Z_ℓ^{init})^{|X|^{n−1}}`.
pub fn closed_form_full_fspindle(summary: &OrbitSummary, n: usize) -> Result<FGAbelianGroup> {
    check(summary)?;
    let orb = summary.orbits as i128;
    let x = summary.carrier_size();
    if n == 0 {
        return group(summary, orb + 1, 0);
    }
    let xi = x as i128;
    let unit = group(summary, orb * (xi + 1) - (xi - 1), summary.initial)?;
    Ok(unit.power(pow(x, n - 1)?))
}

/// `Hb_0 = Z`, `Hb_1 = Z^{orb}`, and for `n ≥ 2`
/// `Hb_n = (Z^{orb|X| − |X| + 1} ⊕ Z_ℓ^{init})^{(|X|−1)^{n−2}}`.
pub fn closed_form_hb_fspindle(summary: &OrbitSummary, n: usize) -> Result<FGAbelianGroup> {
    check(summary)?;
    let orb = summary.orbits as i128;
    let x = summary.carrier_size();
    match n {
        0 => Ok(FGAbelianGroup::free(1)),
        1 => group(summary, orb, 0),
        _ => {
            let xi = x as i128;
            let unit = group(summary, orb * xi - xi + 1, summary.initial)?;
            Ok(unit.power(pow(x - 1, n - 2)?))
        }
    }
}

/// `H_1` of a block spindle with a one-element block `{b}`:
/// `F ⊕ ⊕_i H_1(X_i ∪ {b})`, where `F` is free of rank
/// `Σ orb(f_i)|X_j|` over ordered pairs `i ≠ j` of the other blocks.
pub fn closed_form_h1_block(spec: &BlockSpindleSpec) -> Result<FGAbelianGroup> {
    spec.validate()?;
    if !spec.has_singleton_block() {
        return Err(Error::Unsupported("the block formula needs a one-element block".into()));
    }
    let mut blocks: Vec<&[usize]> = spec.blocks.iter().filter(|b| b.size > 0).map(|b| b.f.as_slice()).collect();
    if !spec.add_singleton_block {
        let pos = blocks.iter().position(|f| f.len() == 1).expect("singleton block present");
        blocks.remove(pos);
    }
    let summaries = blocks
        .iter()
        .map(|f| Ok(analyze_orbit_graph(&FSpindleSpec::new(f.to_vec())?).summary()))
        .collect::<Result<Vec<_>>>()?;
    let total: usize = summaries.iter().map(|s| s.base_size).sum();
    let free_f: usize = summaries.iter().map(|s| s.orbits * (total - s.base_size)).sum();
    let mut result = FGAbelianGroup::free(free_f);
    for s in &summaries {
        result = result.direct_sum(&closed_form_h1_fspindle(s)?);
    }
    Ok(result)
}
