//! The functional graph `Γ_f` of `f: X₀ → X₀`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::FSpindleSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitGraph {
    /// Orbit of each element of `X₀`; `orbit_id[x - 1]` for `x ∈ 1..=m`.
    pub orbit_id: Vec<usize>,
    pub orbit_count: usize,
    /// Elements not in the image of `f`, ascending.
    pub initial_elements: Vec<usize>,
    /// One cycle per orbit, each starting at its smallest element and
    /// listed in orbit order.
    pub cycles: Vec<Vec<usize>>,
    /// gcd of the cycle lengths; 0 when `X₀` is empty.
    pub ell: u64,
}

/// The numbers the closed-form evaluators consume.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    /// `|X₀|`
    pub base_size: usize,
    /// `orb(f)`
    pub orbits: usize,
    /// `init(f)`
    pub initial: usize,
    /// `ℓ`
    pub ell: u64,
}

impl OrbitSummary {
    /// `|X| = |X₀| + 1`
    pub fn carrier_size(&self) -> usize {
        self.base_size + 1
    }
}

impl OrbitGraph {
    pub fn summary(&self) -> OrbitSummary {
        OrbitSummary {
            base_size: self.orbit_id.len(),
            orbits: self.orbit_count,
            initial: self.initial_elements.len(),
            ell: self.ell,
        }
    }

    pub fn initial_count(&self) -> usize {
        self.initial_elements.len()
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }
}

pub fn analyze_orbit_graph(spec: &FSpindleSpec) -> OrbitGraph {
    let m = spec.base_size();
    let f = |x: usize| spec.apply(x);

    // orbits as weakly connected components
    let mut parent: Vec<usize> = (0..=m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for x in 1..=m {
        let (a, b) = (find(&mut parent, x), find(&mut parent, f(x)));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut orbit_of_root = vec![usize::MAX; m + 1];
    let mut orbit_id = vec![0; m];
    let mut orbit_count = 0;
    for x in 1..=m {
        let root = find(&mut parent, x);
        if orbit_of_root[root] == usize::MAX {
            orbit_of_root[root] = orbit_count;
            orbit_count += 1;
        }
        orbit_id[x - 1] = orbit_of_root[root];
    }

    let mut hit = vec![false; m + 1];
    for x in 1..=m {
        hit[f(x)] = true;
    }
    let initial_elements = (1..=m).filter(|&x| !hit[x]).collect();

    // the cycle of an orbit is reached from any of its elements after at most m steps
    let mut on_cycle = vec![false; m + 1];
    let mut orbit_done = vec![false; orbit_count];
    for x in 1..=m {
        let o = orbit_id[x - 1];
        if orbit_done[o] {
            continue;
        }
        orbit_done[o] = true;
        let mut y = x;
        for _ in 0..m {
            y = f(y);
        }
        let start = y;
        loop {
            on_cycle[y] = true;
            y = f(y);
            if y == start {
                break;
            }
        }
    }
    let mut cycles = Vec::with_capacity(orbit_count);
    let mut seen = vec![false; m + 1];
    for x in 1..=m {
        if on_cycle[x] && !seen[x] {
            let mut cycle = vec![x];
            seen[x] = true;
            let mut y = f(x);
            while y != x {
                seen[y] = true;
                cycle.push(y);
                y = f(y);
            }
            cycles.push(cycle);
        }
    }
    cycles.sort_by_key(|c| orbit_id[c[0] - 1]);

    let ell = cycles.iter().fold(0u64, |g, c| g.gcd(&(c.len() as u64)));
    OrbitGraph { orbit_id, orbit_count, initial_elements, cycles, ell }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn graph(f: Vec<usize>) -> OrbitGraph {
        analyze_orbit_graph(&FSpindleSpec::new(f).unwrap())
    }

    #[test]
    fn t1_function() {
        let g = graph(vec![2, 1, 1]);
        assert_eq!(g.orbit_count, 1);
        assert_eq!(g.initial_elements, vec![3]);
        assert_eq!(g.cycles, vec![vec![1, 2]]);
        assert_eq!(g.ell, 2);
    }

    #[test]
    fn sigma_five() {
        let g = graph(vec![2, 3, 4, 5, 1, 1]);
        assert_eq!(g.orbit_count, 1);
        assert_eq!(g.initial_count(), 1);
        assert_eq!(g.cycle_lengths(), vec![5]);
        assert_eq!(g.ell, 5);
    }

    #[test]
    fn identity() {
        let g = graph(vec![1, 2, 3]);
        assert_eq!(g.orbit_count, 3);
        assert!(g.initial_elements.is_empty());
        assert_eq!(g.cycles, vec![vec![1], vec![2], vec![3]]);
        assert_eq!(g.ell, 1);
    }

    #[test]
    fn empty_base() {
        let g = graph(vec![]);
        assert_eq!(g.orbit_count, 0);
        assert_eq!(g.ell, 0);
    }

    /// Orbit count by brute force: x ~ y iff some iterates of x and y meet.
    fn brute_orbits(f: &[usize]) -> usize {
        let m = f.len();
        let iterates = |x: usize| {
            let mut set = BTreeSet::new();
            let mut y = x;
            for _ in 0..=m {
                set.insert(y);
                y = f[y - 1];
            }
            set
        };
        let mut reps: Vec<BTreeSet<usize>> = Vec::new();
        for x in 1..=m {
            let it = iterates(x);
            if !reps.iter().any(|r| !r.is_disjoint(&it)) {
                reps.push(it);
            }
        }
        reps.len()
    }

    #[test]
    fn exhaustive_invariants() {
        for m in 1..=5usize {
            for code in 0..m.pow(m as u32) {
                let f: Vec<usize> = (0..m).map(|i| (code / m.pow(i as u32)) % m + 1).collect();
                let g = graph(f.clone());
                assert_eq!(g.orbit_count, brute_orbits(&f), "f = {f:?}");
                assert_eq!(g.cycles.len(), g.orbit_count);
                for c in &g.cycles {
                    assert_eq!(c[0], *c.iter().min().unwrap());
                    for i in 0..c.len() {
                        assert_eq!(f[c[i] - 1], c[(i + 1) % c.len()]);
                    }
                    assert_eq!(c.len() as u64 % g.ell, 0);
                }
                let image: BTreeSet<usize> = f.iter().copied().collect();
                let init: Vec<usize> = (1..=m).filter(|x| !image.contains(x)).collect();
                assert_eq!(g.initial_elements, init);
                let mut sizes = vec![0; g.orbit_count];
                for &o in &g.orbit_id {
                    sizes[o] += 1;
                }
                assert_eq!(sizes.iter().sum::<usize>(), m);
                assert!(g.ell >= 1);
            }
        }
    }
}
