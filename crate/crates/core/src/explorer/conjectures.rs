use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Spindle;
use crate::chain::Variant;
use crate::error::Result;
use crate::homology::{compute_homology, HomologyRequest};
use crate::linalg::FGAbelianGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Held at every tested degree.
    Pass,
    Fail,
    /// No degree in range falls under the conjecture.
    Vacuous,
    /// Every applicable degree was out of budget.
    Untested,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub status: Status,
    /// Degrees `n + 1` at which the relation was evaluated.
    pub tested: Vec<usize>,
    pub untested: Vec<usize>,
    pub counterexamples: Vec<String>,
}

impl Outcome {
    fn evaluate(degrees: impl Iterator<Item = usize>, mut check: impl FnMut(usize) -> Option<std::result::Result<(), String>>) -> Self {
        let mut outcome = Outcome { status: Status::Vacuous, tested: Vec::new(), untested: Vec::new(), counterexamples: Vec::new() };
        for n in degrees {
            match check(n) {
                Some(Ok(())) => outcome.tested.push(n + 1),
                Some(Err(msg)) => {
                    outcome.tested.push(n + 1);
                    outcome.counterexamples.push(msg);
                }
                None => outcome.untested.push(n + 1),
            }
        }
        outcome.status = if !outcome.counterexamples.is_empty() {
            Status::Fail
        } else if !outcome.tested.is_empty() {
            Status::Pass
        } else if !outcome.untested.is_empty() {
            Status::Untested
        } else {
            Status::Vacuous
        };
        outcome
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
    pub n_max: usize,
    /// `H_n` for `n = 0..=n_max`; `None` where the budget was exceeded.
    pub full: Vec<Option<FGAbelianGroup>>,
    pub normalized: Vec<Option<FGAbelianGroup>>,
    /// `rk H_{n+1} = |X| rk H_n` for `n ≥ max(1, |X| − 2)`.
    pub rank_growth: Outcome,
    /// `rk HN_{n+1} = (|X| − 1) rk HN_n` for `n ≥ |X| − 1`.
    pub normalized_rank_growth: Outcome,
    /// `H_{n+1} ≅ H_n^{|X|−1} ⊕ H_{n−1}^{|X|}` for `n ≥ max(2, |X| − 2)`;
    /// at `n = 1` the extra `Z` in `H_0` breaks it even for f-spindles.
    pub group_recursion: Outcome,
    /// `HN_{n+1} ≅ HN_n^{|X|−1}` for `n ≥ |X| − 1`.
    pub normalized_group_recursion: Outcome,
    /// Number of torsion summands multiplies by `|X|`, same range as `rank_growth`.
    pub torsion_growth: Outcome,
}

/// Highest degree swept by default: `max(|X|, 4)`, clipped so that the
/// boundary one degree above stays within the default degree cap.
pub fn default_degree_bound(size: usize) -> usize {
    size.max(4).min(crate::chain::ChainConfig::default().degree_cap - 1)
}

fn groups(spindle: &Spindle, variant: Variant, n_max: usize) -> Result<Vec<Option<FGAbelianGroup>>> {
    let report = compute_homology(spindle.as_shelf(), &HomologyRequest::new(variant, 0, n_max))?;
    Ok((0..=n_max).map(|n| report.group(n).cloned()).collect())
}

pub fn test_growth_conjectures(spindle: &Spindle, n_max: usize) -> Result<ConjectureReport> {
    let x = spindle.size();
    let full = groups(spindle, Variant::Full, n_max)?;
    let normalized = groups(spindle, Variant::Normalized, n_max)?;
    let pair = |gs: &[Option<FGAbelianGroup>], n: usize| -> Option<(FGAbelianGroup, FGAbelianGroup)> {
        Some((gs[n].clone()?, gs[n + 1].clone()?))
    };
    let full_range = || x.saturating_sub(2).max(1)..n_max;
    let normalized_range = || x.saturating_sub(1)..n_max;
    let recursion_range = || x.saturating_sub(2).max(2)..n_max;

    let rank_growth = Outcome::evaluate(full_range(), |n| {
        let (lo, hi) = pair(&full, n)?;
        Some(if hi.free_rank() == x * lo.free_rank() {
            Ok(())
        } else {
            Err(format!("rk H_{} = {} but |X| rk H_{n} = {}", n + 1, hi.free_rank(), x * lo.free_rank()))
        })
    });
    let normalized_rank_growth = Outcome::evaluate(normalized_range(), |n| {
        let (lo, hi) = pair(&normalized, n)?;
        Some(if hi.free_rank() == (x - 1) * lo.free_rank() {
            Ok(())
        } else {
            Err(format!("rk HN_{} = {} but (|X|-1) rk HN_{n} = {}", n + 1, hi.free_rank(), (x - 1) * lo.free_rank()))
        })
    });
    let group_recursion = Outcome::evaluate(recursion_range(), |n| {
        let (lo, hi) = pair(&full, n)?;
        let prev = full[n - 1].clone()?;
        let rhs = lo.power(x - 1).direct_sum(&prev.power(x));
        Some(if hi.iso_eq(&rhs) { Ok(()) } else { Err(format!("H_{} = {hi} but recursion gives {rhs}", n + 1)) })
    });
    let normalized_group_recursion = Outcome::evaluate(normalized_range(), |n| {
        let (lo, hi) = pair(&normalized, n)?;
        let rhs = lo.power(x - 1);
        Some(if hi.iso_eq(&rhs) { Ok(()) } else { Err(format!("HN_{} = {hi} but HN_{n}^{} = {rhs}", n + 1, x - 1)) })
    });
    let torsion_growth = Outcome::evaluate(full_range(), |n| {
        let (lo, hi) = pair(&full, n)?;
        Some(if hi.torsion_count() == x * lo.torsion_count() {
            Ok(())
        } else {
            Err(format!(
                "H_{} has {} torsion summands, |X| times H_{n} would be {}",
                n + 1,
                hi.torsion_count(),
                x * lo.torsion_count()
            ))
        })
    });
    Ok(ConjectureReport {
        size: x,
        table: spindle.table().rows(),
        n_max,
        full,
        normalized,
        rank_growth,
        normalized_rank_growth,
        group_recursion,
        normalized_group_recursion,
        torsion_growth,
    })
}

/// Runs [`test_growth_conjectures`] on each spindle in parallel; reports come
/// back in input order. `n_max = None` uses [`default_degree_bound`].
pub fn sweep_conjectures(spindles: &[Spindle], n_max: Option<usize>) -> Result<Vec<ConjectureReport>> {
    spindles
        .par_iter()
        .map(|s| test_growth_conjectures(s, n_max.unwrap_or_else(|| default_degree_bound(s.size()))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{assemble_f_spindle, trivial_spindle, FSpindleSpec, OperationTable};

    #[test]
    fn t2_rank_growth_and_recursion() {
        let t2 = Spindle::new(
            OperationTable::from_one_based(vec![vec![1, 2, 4, 3], vec![1, 2, 4, 3], vec![2, 1, 3, 4], vec![2, 1, 3, 4]])
                .unwrap(),
        )
        .unwrap();
        let r = test_growth_conjectures(&t2, 4).unwrap();
        assert_eq!(r.rank_growth.status, Status::Pass);
        assert_eq!(r.rank_growth.tested, vec![3, 4]);
        assert_eq!(r.group_recursion.status, Status::Pass);
        assert_eq!(r.torsion_growth.status, Status::Fail);
        assert_eq!(r.full[3], Some(FGAbelianGroup::new(32, [2u64; 52])));
    }

    #[test]
    fn f_spindles_pass() {
        for (f, n_max) in [(vec![2, 1], 3), (vec![2, 1, 1], 4)] {
            let s = assemble_f_spindle(&FSpindleSpec::new(f).unwrap()).unwrap();
            let r = test_growth_conjectures(&s, n_max).unwrap();
            for o in [&r.rank_growth, &r.normalized_rank_growth, &r.group_recursion, &r.normalized_group_recursion] {
                assert_eq!(o.status, Status::Pass, "{r:?}");
            }
        }
    }

    #[test]
    fn point_is_trivial() {
        let r = test_growth_conjectures(&trivial_spindle(1).unwrap(), 3).unwrap();
        assert_ne!(r.rank_growth.status, Status::Fail);
        assert_ne!(r.group_recursion.status, Status::Fail);
    }

    #[test]
    fn budget_marks_untested() {
        let s = trivial_spindle(4).unwrap();
        let r = test_growth_conjectures(&s, 6).unwrap();
        assert!(r.full[6].is_none());
        assert!(r.rank_growth.untested.contains(&6));
        assert!(!r.rank_growth.tested.contains(&6));
    }
}
