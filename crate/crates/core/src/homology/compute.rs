use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Shelf;
use crate::chain::{boundary_matrix_with, ChainConfig, Variant};
use crate::error::{Error, Result};
use crate::linalg::{homology_from_snf, smith_normal_form_with, FGAbelianGroup, SnfOptions, SnfResult};

#[derive(Clone, Debug)]
pub struct HomologyRequest {
    pub variant: Variant,
    pub n_lo: usize,
    pub n_hi: usize,
    pub chain: ChainConfig,
    pub snf: SnfOptions,
}

impl HomologyRequest {
    pub fn new(variant: Variant, n_lo: usize, n_hi: usize) -> Self {
        HomologyRequest { variant, n_lo, n_hi, chain: ChainConfig::default(), snf: SnfOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeResult {
    pub degree: usize,
    pub variant: String,
    #[serde(flatten)]
    pub group: FGAbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeFailure {
    pub degree: usize,
    pub variant: String,
    pub error: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub results: Vec<DegreeResult>,
    pub failures: Vec<DegreeFailure>,
}

impl HomologyReport {
    pub fn group(&self, degree: usize) -> Option<&FGAbelianGroup> {
        self.results.iter().find(|r| r.degree == degree).map(|r| &r.group)
    }

    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Boundary {
    source_dim: usize,
    snf: SnfResult,
}

/// Homology in each requested degree. Each boundary `∂_n`, `n_lo ≤ n ≤
/// n_hi + 1`, is built and reduced once; degrees whose boundaries exceed the
/// degree cap or the size budgets are reported as failures while the others
/// are still returned. Any other error aborts the request.
pub fn compute_homology(shelf: &Shelf, request: &HomologyRequest) -> Result<HomologyReport> {
    let variant = &request.variant;
    variant.check(shelf)?;
    if request.n_lo > request.n_hi {
        return Err(Error::Contract(format!("empty degree window {}..={}", request.n_lo, request.n_hi)));
    }
    let boundaries: Vec<Result<Boundary>> = (request.n_lo..=request.n_hi + 1)
        .into_par_iter()
        .map(|n| {
            let m = boundary_matrix_with(shelf, n, variant, &request.chain)?;
            let snf = smith_normal_form_with(&m, &request.snf)?;
            log::debug!("{variant} ∂_{n}: {}x{}, rank {}", m.rows(), m.cols(), snf.rank);
            Ok(Boundary { source_dim: m.cols(), snf })
        })
        .collect();
    let mut report = HomologyReport::default();
    for n in request.n_lo..=request.n_hi {
        let outgoing = &boundaries[n - request.n_lo];
        let incoming = &boundaries[n + 1 - request.n_lo];
        match (outgoing, incoming) {
            (Ok(out), Ok(inc)) => report.results.push(DegreeResult {
                degree: n,
                variant: variant.name().to_string(),
                group: homology_from_snf(out.source_dim, out.snf.rank, &inc.snf),
            }),
            (Err(e), _) | (_, Err(e)) if e.is_resource() => report.failures.push(DegreeFailure {
                degree: n,
                variant: variant.name().to_string(),
                error: e.to_string(),
            }),
            (Err(e), _) | (_, Err(e)) => return Err(e.clone()),
        }
    }
    Ok(report)
}

/// Homology in degrees `n_lo..=n_hi`, failing if any degree cannot be computed.
pub fn homology(shelf: &Shelf, variant: &Variant, n_lo: usize, n_hi: usize) -> Result<Vec<FGAbelianGroup>> {
    let mut report = compute_homology(shelf, &HomologyRequest::new(variant.clone(), n_lo, n_hi))?;
    if let Some(f) = report.failures.first() {
        return Err(Error::Unsupported(format!("degree {}: {}", f.degree, f.error)));
    }
    Ok(report.results.drain(..).map(|r| r.group).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{trivial_spindle, OperationTable, Spindle};

    fn t1() -> Spindle {
        Spindle::new(
            OperationTable::from_one_based(vec![
                vec![1, 2, 3, 4],
                vec![1, 2, 3, 4],
                vec![1, 2, 3, 4],
                vec![2, 1, 1, 4],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn t1_full() {
        let groups = homology(t1().as_shelf(), &Variant::Full, 0, 2).unwrap();
        let expected = [FGAbelianGroup::free(2), FGAbelianGroup::new(2, [2u64]), FGAbelianGroup::new(8, [2u64; 4])];
        assert_eq!(groups, expected);
    }

    #[test]
    fn point_is_acyclic() {
        let point = trivial_spindle(1).unwrap();
        for g in homology(point.as_shelf(), &Variant::Augmented, 0, 3).unwrap() {
            assert!(g.is_trivial());
        }
    }

    #[test]
    fn budget_failures_are_per_degree() {
        let mut request = HomologyRequest::new(Variant::Full, 0, 3);
        request.chain.max_entries = 300;
        let report = compute_homology(t1().as_shelf(), &request).unwrap();
        assert_eq!(report.results.len(), 2);
        assert_eq!(report.failures.iter().map(|f| f.degree).collect::<Vec<_>>(), vec![2, 3]);
        let request = HomologyRequest::new(Variant::Full, 5, 6);
        let report = compute_homology(trivial_spindle(2).unwrap().as_shelf(), &request).unwrap();
        assert_eq!(report.results.len(), 1);
        assert_eq!(report.failures[0].degree, 6);
    }

    #[test]
    fn json_shape() {
        let r = DegreeResult { degree: 2, variant: "full".into(), group: FGAbelianGroup::new(8, [2u64; 4]) };
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(text, r#"{"degree":2,"variant":"full","free_rank":8,"torsion":[2,2,2,2]}"#);
        assert_eq!(serde_json::from_str::<DegreeResult>(&text).unwrap(), r);
    }
}
