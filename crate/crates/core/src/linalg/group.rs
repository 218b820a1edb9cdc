//! Finitely generated abelian groups in invariant-factor form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// `Z^free_rank ⊕ Z_{d₁} ⊕ … ⊕ Z_{d_k}` with `2 ≤ d₁ | d₂ | … | d_k`.
///
/// The torsion chain is stored run-length encoded: strictly increasing
/// factors with their multiplicities, so `Z_2^820` is a single run.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<(BigUint, usize)>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z_order`, with `Z_0 = Z` and `Z_1 = 0`.
    pub fn cyclic(order: u64) -> Self {
        match order {
            0 => Self::free(1),
            1 => Self::trivial(),
            d => FGAbelianGroup { free_rank: 0, torsion: vec![(BigUint::from(d), 1)] },
        }
    }

    /// `Z^free_rank ⊕ ⊕ Z_d` for arbitrary cyclic orders `d ≥ 1`.
    pub fn new<I>(free_rank: usize, orders: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigUint>,
    {
        Self::from_runs(free_rank, orders.into_iter().map(|d| (d.into(), 1)))
    }

    /// Like [`FGAbelianGroup::new`] with multiplicities; orders of 0 add to
    /// the free rank.
    pub fn from_runs<I>(free_rank: usize, runs: I) -> Self
    where
        I: IntoIterator<Item = (BigUint, usize)>,
    {
        let mut free_rank = free_rank;
        let mut torsion = Vec::new();
        for (d, count) in runs {
            if d.is_zero() {
                free_rank += count;
            } else {
                torsion.push((d, count));
            }
        }
        FGAbelianGroup { free_rank, torsion: invariant_chain(torsion) }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Runs `(d, multiplicity)` of the invariant-factor chain, ascending.
    pub fn torsion_runs(&self) -> &[(BigUint, usize)] {
        &self.torsion
    }

    /// The full invariant-factor chain `d₁ | d₂ | …`.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        self.torsion.iter().flat_map(|(d, c)| std::iter::repeat_n(d.clone(), *c)).collect()
    }

    /// Number of cyclic torsion summands.
    pub fn torsion_count(&self) -> usize {
        self.torsion.iter().map(|(_, c)| c).sum()
    }

    pub fn torsion_order(&self) -> BigUint {
        self.torsion.iter().fold(BigUint::one(), |acc, (d, c)| acc * d.pow(*c as u32))
    }

    pub fn torsion_subgroup(&self) -> FGAbelianGroup {
        FGAbelianGroup { free_rank: 0, torsion: self.torsion.clone() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &FGAbelianGroup) -> FGAbelianGroup {
        Self::from_runs(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(other.torsion.iter()).cloned(),
        )
    }

    /// `self^{⊕k}`; `power(0)` is trivial.
    pub fn power(&self, k: usize) -> FGAbelianGroup {
        // a chain stays a chain when every multiplicity is scaled
        FGAbelianGroup {
            free_rank: self.free_rank * k,
            torsion: if k == 0 {
                Vec::new()
            } else {
                self.torsion.iter().map(|(d, c)| (d.clone(), c * k)).collect()
            },
        }
    }

    /// Isomorphism test; canonical forms make this plain equality.
    pub fn iso_eq(&self, other: &FGAbelianGroup) -> bool {
        self == other
    }
}

pub fn group_directsum(a: &FGAbelianGroup, b: &FGAbelianGroup) -> FGAbelianGroup {
    a.direct_sum(b)
}

pub fn group_power(a: &FGAbelianGroup, k: usize) -> FGAbelianGroup {
    a.power(k)
}

pub fn group_iso_eq(a: &FGAbelianGroup, b: &FGAbelianGroup) -> bool {
    a.iso_eq(b)
}

/// Normalizes a multiset of cyclic orders (each ≥ 1) into the run-length
/// encoded invariant-factor chain, dropping trivial factors.
///
/// Uses a coprime base instead of prime factorization: every order is a
/// product of powers of pairwise coprime base elements, and each base
/// element then plays the role of a prime in the primary decomposition.
pub fn invariant_chain(runs: Vec<(BigUint, usize)>) -> Vec<(BigUint, usize)> {
    let mut counts: BTreeMap<BigUint, usize> = BTreeMap::new();
    for (d, c) in runs {
        assert!(!d.is_zero(), "zero order passed to invariant_chain");
        if c > 0 && !d.is_one() {
            *counts.entry(d).or_insert(0) += c;
        }
    }
    let distinct: Vec<(BigUint, usize)> = counts.into_iter().collect();
    if distinct.windows(2).all(|w| (&w[1].0 % &w[0].0).is_zero()) {
        return distinct;
    }

    let base = coprime_base(distinct.iter().map(|(d, _)| d.clone()).collect());
    // per base element: (exponent, multiplicity) for positive exponents, descending
    let mut profiles: Vec<Vec<(u32, usize)>> = Vec::with_capacity(base.len());
    for b in &base {
        let mut exps: BTreeMap<u32, usize> = BTreeMap::new();
        for (d, c) in &distinct {
            let e = valuation(d, b);
            if e > 0 {
                *exps.entry(e).or_insert(0) += c;
            }
        }
        profiles.push(exps.into_iter().rev().collect());
    }
    // positions counted from the largest invariant factor downwards
    let mut cuts: Vec<usize> = vec![0];
    for p in &profiles {
        let mut acc = 0;
        for (_, c) in p {
            acc += c;
            cuts.push(acc);
        }
    }
    cuts.sort_unstable();
    cuts.dedup();
    let mut chain_desc: Vec<(BigUint, usize)> = Vec::new();
    for w in cuts.windows(2) {
        let (start, end) = (w[0], w[1]);
        let mut factor = BigUint::one();
        for (b, p) in base.iter().zip(&profiles) {
            let mut acc = 0;
            for (e, c) in p {
                if start < acc + c {
                    factor *= b.pow(*e);
                    break;
                }
                acc += c;
            }
        }
        match chain_desc.last_mut() {
            Some((d, c)) if *d == factor => *c += end - start,
            _ => chain_desc.push((factor, end - start)),
        }
    }
    chain_desc.reverse();
    chain_desc
}

fn coprime_base(mut base: Vec<BigUint>) -> Vec<BigUint> {
    base.retain(|d| !d.is_one());
    base.sort();
    base.dedup();
    'outer: loop {
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    let (a, b) = (base[i].clone(), base[j].clone());
                    base.swap_remove(j);
                    base.swap_remove(i);
                    for v in [&a / &g, &b / &g, g] {
                        if !v.is_one() {
                            base.push(v);
                        }
                    }
                    base.sort();
                    base.dedup();
                    continue 'outer;
                }
            }
        }
        return base;
    }
}

fn valuation(d: &BigUint, b: &BigUint) -> u32 {
    let mut e = 0;
    let mut d = d.clone();
    while (&d % b).is_zero() {
        d /= b;
        e += 1;
    }
    e
}

impl fmt::Display for FGAbelianGroup {
    /// `Z^8 + Z_2^12`, where `Z_2^12` means twelve copies of `Z_2`; `0` for
    /// the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for (d, c) in &self.torsion {
            if *c == 1 {
                parts.push(format!("Z_{d}"));
            } else {
                parts.push(format!("Z_{d}^{c}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Serializes the expanded chain as a list of JSON numbers, falling back to
/// decimal strings for factors beyond `u64`.
pub(crate) fn serialize_factors<S: Serializer>(
    runs: &[(BigUint, usize)],
    serializer: S,
) -> Result<S::Ok, S::Error> {
    let total = runs.iter().map(|(_, c)| c).sum();
    let mut seq = serializer.serialize_seq(Some(total))?;
    for (d, c) in runs {
        for _ in 0..*c {
            match d.to_u64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&d.to_string())?,
            }
        }
    }
    seq.end()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FactorRepr {
    Num(u64),
    Text(String),
}

pub(crate) fn deserialize_factors<'de, D: Deserializer<'de>>(
    deserializer: D,
) -> Result<Vec<BigUint>, D::Error> {
    let raw: Vec<FactorRepr> = Vec::deserialize(deserializer)?;
    raw.into_iter()
        .map(|r| match r {
            FactorRepr::Num(v) => Ok(BigUint::from(v)),
            FactorRepr::Text(s) => s.parse().map_err(|_| de::Error::custom(format!("bad factor {s:?}"))),
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    free_rank: usize,
    torsion: Factors,
}

#[derive(Default)]
struct Factors(Vec<(BigUint, usize)>);

impl Serialize for Factors {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_factors(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Factors {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Factors(deserialize_factors(d)?.into_iter().map(|f| (f, 1)).collect()))
    }
}

impl Serialize for FGAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GroupRepr { free_rank: self.free_rank, torsion: Factors(self.torsion.clone()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FGAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = GroupRepr::deserialize(d)?;
        if repr.torsion.0.iter().any(|(f, _)| f.is_zero()) {
            return Err(de::Error::custom("torsion factor 0 is not allowed; count it in free_rank"));
        }
        Ok(FGAbelianGroup::from_runs(repr.free_rank, repr.torsion.0))
    }
}
