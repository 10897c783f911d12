//! Matroids presented by their circuit families.
//!
//! Ground sets are small (desk scale), so subsets are `u64` bitmasks over
//! the sorted element labels and every oracle is an explicit enumeration:
//! rank by greedy independence extension, duals via cocircuit scans,
//! separations by bipartition sweep. Construction validates the circuit
//! axioms; (C3) exhaustively up to a configurable ground-set size.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::multigraph::{EdgeLabel, EdgeSet, MultiGraph};
use crate::{Error, Limits, Result};

/// A matroid on a finite label set, given by its circuits.
#[derive(Debug)]
pub struct CircuitMatroid {
    ground: Vec<EdgeLabel>,
    index: BTreeMap<EdgeLabel, usize>,
    circuits: Vec<u64>,
    rank_memo: Mutex<HashMap<u64, u32>>,
}

impl Clone for CircuitMatroid {
    fn clone(&self) -> Self {
        CircuitMatroid {
            ground: self.ground.clone(),
            index: self.index.clone(),
            circuits: self.circuits.clone(),
            rank_memo: Mutex::new(HashMap::new()),
        }
    }
}

impl PartialEq for CircuitMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.circuits == other.circuits
    }
}
impl Eq for CircuitMatroid {}

/// A separation of a matroid with its order `r(A) + r(B) - r(E) + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidSeparation {
    pub side_a: EdgeSet,
    pub side_b: EdgeSet,
    pub order: usize,
    /// Whether both sides have rank at least the order.
    pub vertical: bool,
}

/// Witness that two matroids agree after contracting any element of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinCertificate {
    pub matroid_m: CircuitMatroid,
    pub matroid_n: CircuitMatroid,
    pub x: EdgeSet,
}

impl CircuitMatroid {
    /// Builds a matroid and validates the circuit axioms: no empty circuit
    /// (C1), incomparability (C2), and circuit elimination (C3), the last
    /// exhaustively while the ground set is at most `axiom_cap` and on a
    /// deterministic sample of circuit pairs beyond that.
    pub fn new_checked(
        ground: impl IntoIterator<Item = impl Into<EdgeLabel>>,
        circuits: impl IntoIterator<Item = EdgeSet>,
        axiom_cap: usize,
    ) -> Result<Self> {
        let mut ground: Vec<EdgeLabel> = ground.into_iter().map(Into::into).collect();
        ground.sort();
        let before = ground.len();
        ground.dedup();
        if ground.len() != before {
            return Err(Error::invalid("duplicate ground element"));
        }
        if ground.len() > 63 {
            return Err(Error::limit("ground sets are capped at 63 elements"));
        }
        let index: BTreeMap<EdgeLabel, usize> =
            ground.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut masks = Vec::new();
        for c in circuits {
            if c.is_empty() {
                return Err(Error::invalid("the empty set cannot be a circuit"));
            }
            let mut mask = 0u64;
            for l in &c {
                let i = index
                    .get(l)
                    .ok_or_else(|| Error::invalid(format!("circuit element {l} not in ground")))?;
                mask |= 1 << i;
            }
            masks.push(mask);
        }
        masks.sort_unstable();
        masks.dedup();
        for (i, &a) in masks.iter().enumerate() {
            for &b in &masks[i + 1..] {
                if a & b == a || a & b == b {
                    return Err(Error::invalid("circuit family is not an antichain"));
                }
            }
        }
        let m = CircuitMatroid { ground, index, circuits: masks, rank_memo: Mutex::new(HashMap::new()) };
        m.validate_elimination(axiom_cap)?;
        Ok(m)
    }

    pub fn new(
        ground: impl IntoIterator<Item = impl Into<EdgeLabel>>,
        circuits: impl IntoIterator<Item = EdgeSet>,
    ) -> Result<Self> {
        Self::new_checked(ground, circuits, Limits::default().axiom_check)
    }

    /// Constructor for circuit families already known to satisfy the
    /// axioms (minors, duals, sums of validated matroids).
    pub(crate) fn from_masks(ground: Vec<EdgeLabel>, mut circuits: Vec<u64>) -> Self {
        debug_assert!(ground.windows(2).all(|w| w[0] < w[1]));
        circuits.sort_unstable();
        circuits.dedup();
        let index = ground.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        CircuitMatroid { ground, index, circuits, rank_memo: Mutex::new(HashMap::new()) }
    }

    fn validate_elimination(&self, cap: usize) -> Result<()> {
        let exhaustive = self.ground.len() <= cap;
        let mut step = 0usize;
        for (i, &a) in self.circuits.iter().enumerate() {
            for &b in &self.circuits[i + 1..] {
                let common = a & b;
                if common == 0 {
                    continue;
                }
                step += 1;
                if !exhaustive && step % 7 != 0 {
                    continue;
                }
                let mut e = common;
                while e != 0 {
                    let bit = e & e.wrapping_neg();
                    e ^= bit;
                    let target = (a | b) & !bit;
                    if !self.circuits.iter().any(|&c| c & target == c) {
                        return Err(Error::invalid(format!(
                            "circuit elimination fails for {:?} and {:?} on {:?}",
                            self.labels_of(a),
                            self.labels_of(b),
                            self.labels_of(bit)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The uniform matroid `U_{r,n}` on ground `1..=n`.
    pub fn uniform(r: usize, n: usize) -> Self {
        let mut ground: Vec<EdgeLabel> = (1..=n).map(|i| i.to_string()).collect();
        ground.sort();
        let mut circuits = Vec::new();
        if r < n {
            // position subsets are symmetric, so the label order is irrelevant
            let idx: Vec<usize> = (0..n).collect();
            subsets_of_size(&idx, r + 1, &mut |s| {
                circuits.push(s.iter().fold(0u64, |m, &i| m | 1 << i));
            });
        }
        CircuitMatroid::from_masks(ground, circuits)
    }

    /// The cycle matroid of a graph: circuits are the cycles.
    pub fn cycle_matroid(g: &MultiGraph) -> Self {
        let ground: Vec<EdgeLabel> = g.edge_labels().into_iter().collect();
        let compact = g.compact();
        let circuits = compact.cycles();
        CircuitMatroid::from_masks(ground, circuits)
    }

    // ------------------------------------------------------------------
    // Accessors
    // ------------------------------------------------------------------

    pub fn ground(&self) -> &[EdgeLabel] {
        &self.ground
    }

    pub fn ground_set(&self) -> EdgeSet {
        self.ground.iter().cloned().collect()
    }

    pub fn size(&self) -> usize {
        self.ground.len()
    }

    pub fn circuit_count(&self) -> usize {
        self.circuits.len()
    }

    pub fn circuits(&self) -> Vec<EdgeSet> {
        self.circuits.iter().map(|&m| self.labels_of(m)).collect()
    }

    pub(crate) fn circuit_masks(&self) -> &[u64] {
        &self.circuits
    }

    pub fn full_mask(&self) -> u64 {
        if self.ground.is_empty() {
            0
        } else {
            (1u64 << self.ground.len()) - 1
        }
    }

    pub fn labels_of(&self, mask: u64) -> EdgeSet {
        (0..self.ground.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.ground[i].clone())
            .collect()
    }

    pub fn mask_of(&self, x: &EdgeSet) -> Result<u64> {
        let mut mask = 0u64;
        for l in x {
            let i = self
                .index
                .get(l)
                .ok_or_else(|| Error::invalid(format!("element {l} not in ground set")))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    pub fn element_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    // ------------------------------------------------------------------
    // Rank oracle
    // ------------------------------------------------------------------

    pub fn is_independent_mask(&self, x: u64) -> bool {
        self.circuits.iter().all(|&c| c & x != c)
    }

    pub fn is_independent(&self, x: &EdgeSet) -> Result<bool> {
        Ok(self.is_independent_mask(self.mask_of(x)?))
    }

    /// Rank by greedy extension: the size of a maximal subset of `x`
    /// containing no circuit. Memoised per matroid.
    pub fn rank_mask(&self, x: u64) -> usize {
        if let Some(&r) = self.rank_memo.lock().unwrap().get(&x) {
            return r as usize;
        }
        let mut indep = 0u64;
        let mut rest = x;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            let cand = indep | bit;
            if self.circuits.iter().all(|&c| c & cand != c) {
                indep = cand;
            }
        }
        let r = indep.count_ones() as usize;
        self.rank_memo.lock().unwrap().insert(x, r as u32);
        r
    }

    pub fn rank(&self, x: &EdgeSet) -> Result<usize> {
        Ok(self.rank_mask(self.mask_of(x)?))
    }

    pub fn full_rank(&self) -> usize {
        self.rank_mask(self.full_mask())
    }

    pub fn closure_mask(&self, x: u64) -> u64 {
        let r = self.rank_mask(x);
        let mut out = x;
        for i in 0..self.ground.len() {
            if x >> i & 1 == 0 && self.rank_mask(x | 1 << i) == r {
                out |= 1 << i;
            }
        }
        out
    }

    pub fn closure(&self, x: &EdgeSet) -> Result<EdgeSet> {
        Ok(self.labels_of(self.closure_mask(self.mask_of(x)?)))
    }

    /// Elements contained in a singleton circuit.
    pub fn loops(&self) -> EdgeSet {
        self.circuits
            .iter()
            .filter(|c| c.count_ones() == 1)
            .map(|&c| self.labels_of(c).into_iter().next().unwrap())
            .collect()
    }

    /// Elements in no circuit at all.
    pub fn coloops(&self) -> EdgeSet {
        let covered = self.circuits.iter().fold(0u64, |m, &c| m | c);
        self.labels_of(self.full_mask() & !covered)
    }

    // ------------------------------------------------------------------
    // Minors and duality
    // ------------------------------------------------------------------

    fn sub_ground(&self, keep: u64) -> Vec<EdgeLabel> {
        (0..self.ground.len())
            .filter(|i| keep >> i & 1 == 1)
            .map(|i| self.ground[i].clone())
            .collect()
    }

    fn remap(&self, keep: u64, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut slot = 0;
        for i in 0..self.ground.len() {
            if keep >> i & 1 == 1 {
                if mask >> i & 1 == 1 {
                    out |= 1 << slot;
                }
                slot += 1;
            }
        }
        out
    }

    pub fn delete(&self, z: &EdgeSet) -> Result<CircuitMatroid> {
        let zm = self.mask_of(z)?;
        Ok(self.delete_mask(zm))
    }

    pub(crate) fn delete_mask(&self, zm: u64) -> CircuitMatroid {
        let keep = self.full_mask() & !zm;
        let circuits = self
            .circuits
            .iter()
            .filter(|&&c| c & zm == 0)
            .map(|&c| self.remap(keep, c))
            .collect();
        CircuitMatroid::from_masks(self.sub_ground(keep), circuits)
    }

    pub fn contract(&self, z: &EdgeSet) -> Result<CircuitMatroid> {
        let zm = self.mask_of(z)?;
        Ok(self.contract_mask(zm))
    }

    pub(crate) fn contract_mask(&self, zm: u64) -> CircuitMatroid {
        let keep = self.full_mask() & !zm;
        // minimal nonempty traces of circuits
        let mut traces: Vec<u64> = self
            .circuits
            .iter()
            .map(|&c| c & keep)
            .filter(|&c| c != 0)
            .collect();
        traces.sort_by_key(|c| c.count_ones());
        let mut minimal: Vec<u64> = Vec::new();
        'outer: for t in traces {
            for &m in &minimal {
                if t & m == m {
                    continue 'outer;
                }
            }
            minimal.push(t);
        }
        let circuits = minimal.into_iter().map(|c| self.remap(keep, c)).collect();
        CircuitMatroid::from_masks(self.sub_ground(keep), circuits)
    }

    pub fn delete_element(&self, e: &str) -> Result<CircuitMatroid> {
        self.delete(&[e.to_string()].into())
    }

    pub fn contract_element(&self, e: &str) -> Result<CircuitMatroid> {
        self.contract(&[e.to_string()].into())
    }

    /// The dual matroid: cocircuits are the minimal sets whose removal
    /// drops the rank.
    pub fn dual(&self) -> CircuitMatroid {
        let full = self.full_mask();
        let r = self.full_rank();
        let mut cocircuits = Vec::new();
        for d in 1u64..=full {
            if self.rank_mask(full & !d) >= r {
                continue;
            }
            let mut minimal = true;
            let mut e = d;
            while e != 0 {
                let bit = e & e.wrapping_neg();
                e ^= bit;
                if self.rank_mask((full & !d) | bit) < r {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                cocircuits.push(d);
            }
        }
        CircuitMatroid::from_masks(self.ground.clone(), cocircuits)
    }

    // ------------------------------------------------------------------
    // Parallel and series structure
    // ------------------------------------------------------------------

    /// Partition of the ground set where two elements share a class
    /// exactly when they form a 2-circuit; loops and coloops sit in
    /// singleton classes.
    pub fn parallel_classes(&self) -> Vec<EdgeSet> {
        let n = self.ground.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &c in &self.circuits {
            if c.count_ones() == 2 {
                let a = c.trailing_zeros() as usize;
                let b = (63 - c.leading_zeros()) as usize;
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        let mut classes: BTreeMap<usize, EdgeSet> = BTreeMap::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            classes.entry(root).or_default().insert(self.ground[i].clone());
        }
        classes.into_values().collect()
    }

    /// Series classes: the parallel classes of the dual.
    pub fn series_classes(&self) -> Vec<EdgeSet> {
        let dual = self.dual();
        dual.parallel_classes()
    }

    /// Contracts all but the lexicographically least element of each
    /// series class.
    pub fn cosimplify(&self) -> CircuitMatroid {
        let mut gone = EdgeSet::new();
        for class in self.series_classes() {
            for l in class.iter().skip(1) {
                gone.insert(l.clone());
            }
        }
        self.contract(&gone).expect("series class labels are valid")
    }

    // ------------------------------------------------------------------
    // Separations and connectivity
    // ------------------------------------------------------------------

    /// Whether every pair of elements lies in a common circuit chain
    /// (matroid connectivity); the empty and single-element matroid are
    /// connected by convention.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// The connectivity components as label sets.
    pub fn connected_components(&self) -> Vec<EdgeSet> {
        let n = self.ground.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &c in &self.circuits {
            let first = c.trailing_zeros() as usize;
            let mut e = c & !(1 << first);
            while e != 0 {
                let bit = e & e.wrapping_neg();
                e ^= bit;
                let b = bit.trailing_zeros() as usize;
                let (ra, rb) = (find(&mut parent, first), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        let mut comps: BTreeMap<usize, EdgeSet> = BTreeMap::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            comps.entry(root).or_default().insert(self.ground[i].clone());
        }
        comps.into_values().collect()
    }

    fn separation_from_mask(&self, a: u64) -> MatroidSeparation {
        let full = self.full_mask();
        let b = full & !a;
        let (ra, rb, r) = (self.rank_mask(a), self.rank_mask(b), self.rank_mask(full));
        let order = ra + rb - r + 1;
        let vertical = ra >= order && rb >= order;
        let (sa, sb) = (self.labels_of(a), self.labels_of(b));
        let (side_a, side_b) = if sa <= sb { (sa, sb) } else { (sb, sa) };
        MatroidSeparation { side_a, side_b, order, vertical }
    }

    /// All vertical k-separations: `|A|, |B| >= k`, `r(A) + r(B) - r(E) < k`,
    /// and both sides of rank at least `k`. Exhaustive over bipartitions.
    pub fn vertical_k_separations(&self, k: usize) -> Result<Vec<MatroidSeparation>> {
        self.vertical_k_separations_capped(k, Limits::default().max_separation)
    }

    pub fn vertical_k_separations_capped(
        &self,
        k: usize,
        cap: usize,
    ) -> Result<Vec<MatroidSeparation>> {
        let n = self.ground.len();
        if n > cap {
            return Err(Error::limit(format!(
                "separation enumeration capped at {cap} elements, ground has {n}"
            )));
        }
        if k == 0 || n < 2 {
            return Ok(Vec::new());
        }
        let r = self.full_rank();
        let mut out = Vec::new();
        for bits in 0..(1u64 << (n - 1)) {
            let a = (bits << 1) | 1;
            let b = self.full_mask() & !a;
            if (a.count_ones() as usize) < k || (b.count_ones() as usize) < k {
                continue;
            }
            let (ra, rb) = (self.rank_mask(a), self.rank_mask(b));
            if ra + rb < r + k && ra >= k && rb >= k {
                out.push(self.separation_from_mask(a));
            }
        }
        out.sort_by(|x, y| (&x.side_a, &x.side_b).cmp(&(&y.side_a, &y.side_b)));
        Ok(out)
    }

    /// No vertical 1- or 2-separation.
    pub fn is_vertically_3_connected(&self) -> Result<bool> {
        for k in 1..=2 {
            if !self.vertical_k_separations(k)?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn all_in_one_class(classes: &[EdgeSet], side: &EdgeSet) -> bool {
        classes.iter().any(|c| side.is_subset(c))
    }

    /// The 2-separations where neither side lies inside a single parallel
    /// class or a single series class.
    pub fn essential_2_separations(&self) -> Result<Vec<MatroidSeparation>> {
        let n = self.ground.len();
        let cap = Limits::default().max_separation;
        if n > cap {
            return Err(Error::limit(format!(
                "separation enumeration capped at {cap} elements, ground has {n}"
            )));
        }
        if n < 4 {
            return Ok(Vec::new());
        }
        let par = self.parallel_classes();
        let ser = self.series_classes();
        let mut out = Vec::new();
        for bits in 0..(1u64 << (n - 1)) {
            let a = (bits << 1) | 1;
            let b = self.full_mask() & !a;
            if a.count_ones() < 2 || b.count_ones() < 2 {
                continue;
            }
            let sep = self.separation_from_mask(a);
            if sep.order > 2 {
                continue;
            }
            let (la, lb) = (self.labels_of(a), self.labels_of(b));
            let tame = |side: &EdgeSet| {
                Self::all_in_one_class(&par, side) || Self::all_in_one_class(&ser, side)
            };
            if !tame(&la) && !tame(&lb) {
                out.push(sep);
            }
        }
        out.sort_by(|x, y| (&x.side_a, &x.side_b).cmp(&(&y.side_a, &y.side_b)));
        Ok(out)
    }

    /// Every 2-separation has one side entirely in parallel or in series.
    pub fn is_essentially_3_connected(&self) -> Result<bool> {
        Ok(self.essential_2_separations()?.is_empty())
    }

    // ------------------------------------------------------------------
    // Sums
    // ------------------------------------------------------------------

    fn sum_preconditions(m1: &CircuitMatroid, m2: &CircuitMatroid, e: &str) -> Result<()> {
        let g1 = m1.ground_set();
        let g2 = m2.ground_set();
        let common: EdgeSet = g1.intersection(&g2).cloned().collect();
        if common.len() != 1 || !common.contains(e) {
            return Err(Error::invalid(format!(
                "ground sets must intersect exactly in the basepoint {e}"
            )));
        }
        for (m, name) in [(m1, "first"), (m2, "second")] {
            if m.loops().contains(e) || m.coloops().contains(e) {
                return Err(Error::invalid(format!(
                    "basepoint {e} is a loop or coloop of the {name} matroid"
                )));
            }
        }
        Ok(())
    }

    /// Parallel connection on basepoint `e`: circuits of both summands,
    /// plus the joins `(C ∪ C') - e` over circuits through `e`.
    pub fn parallel_connection(
        m1: &CircuitMatroid,
        m2: &CircuitMatroid,
        e: &str,
    ) -> Result<CircuitMatroid> {
        Self::sum_preconditions(m1, m2, e)?;
        let mut ground: Vec<EdgeLabel> = m1.ground_set().union(&m2.ground_set()).cloned().collect();
        ground.sort();
        let circuits = Self::joined_circuits(m1, m2, e, &ground, true);
        Ok(CircuitMatroid::from_masks(ground, circuits))
    }

    /// The 2-sum on basepoint `e`: circuits avoiding `e` in either
    /// summand, plus all `(C - e) ∪ (C' - e)` joins.
    pub fn two_sum(m1: &CircuitMatroid, m2: &CircuitMatroid, e: &str) -> Result<CircuitMatroid> {
        Self::sum_preconditions(m1, m2, e)?;
        let mut ground: Vec<EdgeLabel> = m1
            .ground_set()
            .union(&m2.ground_set())
            .filter(|l| l.as_str() != e)
            .cloned()
            .collect();
        ground.sort();
        let circuits = Self::joined_circuits(m1, m2, e, &ground, false);
        Ok(CircuitMatroid::from_masks(ground, circuits))
    }

    fn joined_circuits(
        m1: &CircuitMatroid,
        m2: &CircuitMatroid,
        e: &str,
        ground: &[EdgeLabel],
        keep_base: bool,
    ) -> Vec<u64> {
        let pos: BTreeMap<&EdgeLabel, usize> =
            ground.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let lift = |m: &CircuitMatroid, c: u64, drop_e: bool| -> u64 {
            let mut out = 0u64;
            for (i, l) in m.ground.iter().enumerate() {
                if c >> i & 1 == 1 {
                    if drop_e && l == e {
                        continue;
                    }
                    out |= 1 << pos[l];
                }
            }
            out
        };
        let mut circuits: Vec<u64> = Vec::new();
        for (m, other) in [(m1, m2), (m2, m1)] {
            let _ = other;
            let ei = m.element_index(e).unwrap();
            for &c in &m.circuits {
                if c >> ei & 1 == 0 {
                    circuits.push(lift(m, c, false));
                } else if keep_base {
                    circuits.push(lift(m, c, false));
                }
            }
        }
        let e1 = m1.element_index(e).unwrap();
        let e2 = m2.element_index(e).unwrap();
        for &c1 in m1.circuits.iter().filter(|&&c| c >> e1 & 1 == 1) {
            for &c2 in m2.circuits.iter().filter(|&&c| c >> e2 & 1 == 1) {
                circuits.push(lift(m1, c1, true) | lift(m2, c2, true));
            }
        }
        circuits.sort_unstable();
        circuits.dedup();
        // The joins of parallel partners of e can duplicate plain circuits;
        // keep the family an antichain.
        let mut minimal: Vec<u64> = Vec::new();
        let mut by_size = circuits;
        by_size.sort_by_key(|c| c.count_ones());
        'outer: for c in by_size {
            for &m in &minimal {
                if c & m == m {
                    continue 'outer;
                }
            }
            minimal.push(c);
        }
        minimal.sort_unstable();
        minimal
    }

    // ------------------------------------------------------------------
    // Clones, lines, lonely elements
    // ------------------------------------------------------------------

    /// Clone test by circuit exchange: for every circuit meeting `{e, f}`
    /// in exactly one element, the symmetric difference with `{e, f}` is
    /// again a circuit.
    pub fn are_clones(&self, e: &str, f: &str) -> Result<bool> {
        let ei = self
            .element_index(e)
            .ok_or_else(|| Error::invalid(format!("element {e} not in ground set")))?;
        let fi = self
            .element_index(f)
            .ok_or_else(|| Error::invalid(format!("element {f} not in ground set")))?;
        if ei == fi {
            return Ok(true);
        }
        let pair = (1u64 << ei) | (1 << fi);
        for &c in &self.circuits {
            if (c & pair).count_ones() == 1 {
                let swapped = c ^ pair;
                if !self.circuits.contains(&swapped) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All flats, as masks.
    pub(crate) fn flat_masks(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for mask in 0..=self.full_mask() {
            out.insert(self.closure_mask(mask));
        }
        out
    }

    /// Flats that are unions of circuits.
    pub fn cyclic_flats(&self) -> Vec<EdgeSet> {
        self.flat_masks()
            .into_iter()
            .filter(|&f| {
                let mut covered = 0u64;
                for &c in &self.circuits {
                    if c & f == c {
                        covered |= c;
                    }
                }
                covered == f
            })
            .map(|f| self.labels_of(f))
            .collect()
    }

    /// The rank-2 flats.
    pub fn lines(&self) -> Vec<EdgeSet> {
        self.flat_masks()
            .into_iter()
            .filter(|&f| self.rank_mask(f) == 2)
            .map(|f| self.labels_of(f))
            .collect()
    }

    /// Whether a line contains at least three rank-1 flats.
    pub fn is_nontrivial_line(&self, line: &EdgeSet) -> Result<bool> {
        let lm = self.mask_of(line)?;
        if self.rank_mask(lm) != 2 || self.closure_mask(lm) != lm {
            return Err(Error::invalid("the given set is not a line"));
        }
        Ok(self.rank1_flats_within(lm).len() >= 3)
    }

    fn rank1_flats_within(&self, lm: u64) -> Vec<u64> {
        let mut flats = BTreeSet::new();
        for i in 0..self.ground.len() {
            if lm >> i & 1 == 1 && self.rank_mask(1 << i) == 1 {
                flats.insert(self.closure_mask(1 << i) & lm);
            }
        }
        flats.into_iter().collect()
    }

    /// The lonely elements of a line: in no adjacent line (one whose union
    /// with `line` has rank 3) and not properly contained in a rank-1
    /// flat. Trivial lines have none.
    pub fn lonely_elements(&self, line: &EdgeSet) -> Result<EdgeSet> {
        let lm = self.mask_of(line)?;
        if self.rank_mask(lm) != 2 || self.closure_mask(lm) != lm {
            return Err(Error::invalid("the given set is not a line"));
        }
        if self.rank1_flats_within(lm).len() < 3 {
            return Ok(EdgeSet::new());
        }
        let lines: Vec<u64> =
            self.flat_masks().into_iter().filter(|&f| self.rank_mask(f) == 2).collect();
        let mut out = EdgeSet::new();
        for i in 0..self.ground.len() {
            if lm >> i & 1 == 0 {
                continue;
            }
            let bit = 1u64 << i;
            if self.closure_mask(bit) != bit {
                continue; // properly contained in a rank-1 flat (or a loop)
            }
            let adjacent = lines.iter().any(|&l2| {
                l2 != lm && l2 & bit != 0 && self.rank_mask(l2 | lm) == 3
            });
            if !adjacent {
                out.insert(self.ground[i].clone());
            }
        }
        Ok(out)
    }

    // ------------------------------------------------------------------
    // Twins and disagreement
    // ------------------------------------------------------------------

    /// Minimal sets on which the rank functions of two matroids (on the
    /// same ground set) differ.
    pub fn minimal_disagreement_sets(&self, other: &CircuitMatroid) -> Result<Vec<EdgeSet>> {
        if self.ground != other.ground {
            return Err(Error::invalid("disagreement sets need a common ground set"));
        }
        let mut masks: Vec<u64> = Vec::new();
        let mut all: Vec<u64> = (1..=self.full_mask()).collect();
        all.sort_by_key(|m| m.count_ones());
        'outer: for m in all {
            if self.rank_mask(m) == other.rank_mask(m) {
                continue;
            }
            for &kept in &masks {
                if m & kept == kept {
                    continue 'outer;
                }
            }
            masks.push(m);
        }
        masks.sort_unstable();
        Ok(masks.into_iter().map(|m| self.labels_of(m)).collect())
    }

    /// Validates that `self/e == other/e` for every `e` in `x` and returns
    /// the certificate.
    pub fn twin_check(
        &self,
        other: &CircuitMatroid,
        x: &EdgeSet,
    ) -> Result<TwinCertificate> {
        if self.ground != other.ground {
            return Err(Error::invalid("twins need a common ground set"));
        }
        for e in x {
            if self.element_index(e).is_none() {
                return Err(Error::invalid(format!("element {e} not in ground set")));
            }
            let a = self.contract_element(e)?;
            let b = other.contract_element(e)?;
            if a != b {
                return Err(Error::invalid(format!(
                    "not twins: contractions by {e} differ"
                )));
            }
        }
        Ok(TwinCertificate { matroid_m: self.clone(), matroid_n: other.clone(), x: x.clone() })
    }

    // ------------------------------------------------------------------
    // Isomorphism and minors
    // ------------------------------------------------------------------

    /// Per-element invariant: how many circuits of each size contain it.
    fn element_spectra(&self) -> Vec<Vec<(usize, usize)>> {
        (0..self.ground.len())
            .map(|i| {
                let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
                for &c in &self.circuits {
                    if c >> i & 1 == 1 {
                        *counts.entry(c.count_ones() as usize).or_insert(0) += 1;
                    }
                }
                counts.into_iter().collect()
            })
            .collect()
    }

    /// Cheap isomorphism-invariant fingerprint used to bucket candidates.
    pub(crate) fn invariant_key(&self) -> Vec<u64> {
        let mut sizes: Vec<u64> =
            self.circuits.iter().map(|c| c.count_ones() as u64).collect();
        sizes.sort_unstable();
        let mut spectra: Vec<String> =
            self.element_spectra().iter().map(|s| format!("{s:?}")).collect();
        spectra.sort();
        let mut key = vec![self.ground.len() as u64, self.full_rank() as u64];
        key.extend(sizes);
        key.push(u64::MAX);
        for s in spectra {
            key.push(fxhash(&s));
        }
        key
    }

    /// Isomorphism by backtracking over element bijections, pruned by the
    /// per-element circuit-size spectra.
    pub fn is_isomorphic(&self, other: &CircuitMatroid) -> bool {
        if self.ground.len() != other.ground.len()
            || self.circuits.len() != other.circuits.len()
            || self.full_rank() != other.full_rank()
        {
            return false;
        }
        let sa = self.element_spectra();
        let sb = other.element_spectra();
        {
            let mut a_sorted = sa.clone();
            let mut b_sorted = sb.clone();
            a_sorted.sort();
            b_sorted.sort();
            if a_sorted != b_sorted {
                return false;
            }
        }
        let n = self.ground.len();
        let mut mapping: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        let cb: BTreeSet<u64> = other.circuits.iter().cloned().collect();
        self.iso_search(other, &sa, &sb, &cb, &mut mapping, &mut used, 0)
    }

    fn iso_search(
        &self,
        other: &CircuitMatroid,
        sa: &[Vec<(usize, usize)>],
        sb: &[Vec<(usize, usize)>],
        cb: &BTreeSet<u64>,
        mapping: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        let n = self.ground.len();
        if depth == n {
            return true;
        }
        for target in 0..n {
            if used[target] || sa[depth] != sb[target] {
                continue;
            }
            mapping[depth] = Some(target);
            used[target] = true;
            // every circuit fully inside the mapped prefix must map to a circuit
            let ok = self.circuits.iter().all(|&c| {
                let within = (0..=depth).fold(0u64, |m, i| m | (1 << i));
                if c & within != c {
                    return true;
                }
                let mut img = 0u64;
                for i in 0..=depth {
                    if c >> i & 1 == 1 {
                        img |= 1 << mapping[i].unwrap();
                    }
                }
                cb.contains(&img)
            }) && other.circuits.iter().all(|&c| {
                // and conversely within the image
                let img_within = (0..=depth).fold(0u64, |m, i| m | (1 << mapping[i].unwrap()));
                if c & img_within != c {
                    return true;
                }
                let mut pre = 0u64;
                for i in 0..=depth {
                    if c >> mapping[i].unwrap() & 1 == 1 {
                        pre |= 1 << i;
                    }
                }
                self.circuits.contains(&pre)
            });
            if ok && self.iso_search(other, sa, sb, cb, mapping, used, depth + 1) {
                return true;
            }
            mapping[depth] = None;
            used[target] = false;
        }
        false
    }

    /// Exhaustive minor containment: explore keep/delete/contract choices
    /// per element (deletions before contractions), prune by element
    /// count, rank, and corank, and dedup candidates at target size by
    /// invariant-bucketed isomorphism classes.
    pub fn has_minor(&self, target: &CircuitMatroid, limits: &Limits) -> Result<bool> {
        if self.ground.len() > limits.max_elements {
            return Err(Error::limit(format!(
                "minor search capped at {} elements, ground has {}",
                limits.max_elements,
                self.ground.len()
            )));
        }
        if target.ground.len() > self.ground.len() {
            return Ok(false);
        }
        let mut seen: HashMap<Vec<u64>, Vec<CircuitMatroid>> = HashMap::new();
        Ok(self.minor_search(target, 0, &mut seen))
    }

    fn minor_search(
        &self,
        target: &CircuitMatroid,
        next: usize,
        seen: &mut HashMap<Vec<u64>, Vec<CircuitMatroid>>,
    ) -> bool {
        let n = self.ground.len();
        let nt = target.ground.len();
        if n < nt || self.full_rank() < target.full_rank() {
            return false;
        }
        if n - self.full_rank() < nt - target.full_rank() {
            return false;
        }
        if n == nt {
            let key = self.invariant_key();
            if key != target.invariant_key() {
                return false;
            }
            let bucket = seen.entry(key).or_default();
            if bucket.iter().any(|m| m == self || m.is_isomorphic(self)) {
                return false;
            }
            let hit = self.is_isomorphic(target);
            bucket.push(self.clone());
            return hit;
        }
        if next >= n {
            return false;
        }
        // keep element `next` only while the kept prefix still fits
        if next < nt && self.minor_search(target, next + 1, seen) {
            return true;
        }
        if n > nt {
            let bit = 1u64 << next;
            if self.delete_mask(bit).minor_search(target, next, seen) {
                return true;
            }
            if self.contract_mask(bit).minor_search(target, next, seen) {
                return true;
            }
        }
        false
    }

    // ------------------------------------------------------------------
    // Text format
    // ------------------------------------------------------------------

    /// Parses the matroid text format: a `ground` line then one `circuit`
    /// line per circuit; `#` comments.
    pub fn parse(text: &str) -> Result<CircuitMatroid> {
        let mut ground: Option<Vec<String>> = None;
        let mut circuits: Vec<EdgeSet> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "ground" => {
                    if ground.is_some() {
                        return Err(Error::parse(lineno, "duplicate ground line"));
                    }
                    ground = Some(toks[1..].iter().map(|s| s.to_string()).collect());
                }
                "circuit" => {
                    if toks.len() < 2 {
                        return Err(Error::parse(lineno, "empty circuit"));
                    }
                    circuits.push(toks[1..].iter().map(|s| s.to_string()).collect());
                }
                other => {
                    return Err(Error::parse(lineno, format!("unrecognised directive `{other}`")))
                }
            }
        }
        let ground = ground.ok_or_else(|| Error::parse(0, "missing ground line"))?;
        CircuitMatroid::new(ground, circuits).map_err(|e| match e {
            Error::InvalidInput(m) => Error::parse(0, m),
            other => other,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("ground");
        for l in &self.ground {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
        for c in self.circuits() {
            out.push_str("circuit");
            for l in &c {
                out.push(' ');
                out.push_str(l);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_doc(&self) -> MatroidDoc {
        MatroidDoc {
            ground: self.ground.clone(),
            circuits: self.circuits().into_iter().map(|c| c.into_iter().collect()).collect(),
        }
    }

    pub fn from_doc(doc: &MatroidDoc) -> Result<CircuitMatroid> {
        CircuitMatroid::new(
            doc.ground.clone(),
            doc.circuits.iter().map(|c| c.iter().cloned().collect()),
        )
    }
}

/// JSON mirror of a matroid document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatroidDoc {
    pub ground: Vec<EdgeLabel>,
    pub circuits: Vec<Vec<EdgeLabel>>,
}

fn fxhash(s: &str) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

pub(crate) fn subsets_of_size<F: FnMut(&[usize])>(items: &[usize], k: usize, f: &mut F) {
    fn go<F: FnMut(&[usize])>(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut F) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, k, 0, &mut Vec::new(), f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::MultiGraph;

    fn labels(xs: &[&str]) -> EdgeSet {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn doubled_triangle() -> MultiGraph {
        MultiGraph::from_parts(
            ["a", "b", "c"],
            [
                ("1", "a", "b"),
                ("2", "a", "b"),
                ("3", "b", "c"),
                ("4", "b", "c"),
                ("5", "a", "c"),
                ("6", "a", "c"),
            ],
            [],
        )
        .unwrap()
    }

    fn bicircular_of(g: &MultiGraph) -> CircuitMatroid {
        CircuitMatroid::new(
            g.edge_labels(),
            g.enumerate_bicycles().into_iter().map(|b| b.edges),
        )
        .unwrap()
    }

    #[test]
    fn axioms_reject_bad_families() {
        assert!(CircuitMatroid::new(["a", "b"], [EdgeSet::new()]).is_err());
        assert!(CircuitMatroid::new(
            ["a", "b", "c"],
            [labels(&["a"]), labels(&["a", "b"])],
        )
        .is_err());
        // two triangles of K4 sharing an edge, but no elimination circuit
        assert!(CircuitMatroid::new(
            ["a", "b", "c", "d", "e"],
            [labels(&["a", "b", "c"]), labels(&["c", "d", "e"])],
        )
        .is_err());
    }

    #[test]
    fn rank_basics() {
        let u23 = CircuitMatroid::uniform(2, 3);
        assert_eq!(u23.rank(&EdgeSet::new()).unwrap(), 0);
        assert_eq!(u23.rank(&labels(&["1", "2"])).unwrap(), 2);
        assert_eq!(u23.full_rank(), 2);
        let b = bicircular_of(&doubled_triangle());
        assert_eq!(b.full_rank(), 3);
        assert!(b.is_isomorphic(&CircuitMatroid::uniform(3, 6)));
    }

    #[test]
    fn rank_is_monotone_and_submodular() {
        let m = bicircular_of(&doubled_triangle());
        let full = m.full_mask();
        for x in 0..=full {
            for y in [x | (x >> 1), x | 1, full & !(x << 2 & full)] {
                let (rx, ry) = (m.rank_mask(x), m.rank_mask(y));
                assert!(m.rank_mask(x | y) + m.rank_mask(x & y) <= rx + ry);
                if x & y == x {
                    assert!(rx <= ry);
                }
            }
        }
    }

    #[test]
    fn minors_and_dual() {
        let u36 = CircuitMatroid::uniform(3, 6);
        // contracting a coloop-free element drops the rank
        let c = u36.contract_element("1").unwrap();
        assert_eq!(c.full_rank(), 2);
        assert!(c.is_isomorphic(&CircuitMatroid::uniform(2, 5)));
        let d = u36.delete_element("1").unwrap();
        assert!(d.is_isomorphic(&CircuitMatroid::uniform(3, 5)));

        // contracting one element of a 2-circuit makes the other a loop
        let m = CircuitMatroid::new(["a", "b", "c"], [labels(&["a", "b"])]).unwrap();
        let c = m.contract_element("a").unwrap();
        assert_eq!(c.loops(), labels(&["b"]));

        // contracting a coloop keeps the remaining circuits
        let m = CircuitMatroid::new(["a", "b", "c", "d"], [labels(&["a", "b", "c"])]).unwrap();
        let c = m.contract_element("d").unwrap();
        assert_eq!(c.circuits(), vec![labels(&["a", "b", "c"])]);

        for m in [CircuitMatroid::uniform(2, 4), bicircular_of(&doubled_triangle())] {
            assert_eq!(m.dual().dual(), m);
        }
        assert!(CircuitMatroid::uniform(2, 5).dual().is_isomorphic(&CircuitMatroid::uniform(3, 5)));
    }

    #[test]
    fn delete_contract_commute_on_disjoint_sets() {
        let m = bicircular_of(&doubled_triangle());
        let z1 = labels(&["1"]);
        let z2 = labels(&["4"]);
        let a = m.delete(&z1).unwrap().contract(&z2).unwrap();
        let b = m.contract(&z2).unwrap().delete(&z1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parallel_and_series_classes() {
        // cycle matroid of a triangle with every edge subdivided once:
        // each subdivided pair is a series class
        let mut g = MultiGraph::new();
        for (i, (u, v)) in [("a", "b"), ("b", "c"), ("c", "a")].iter().enumerate() {
            let mid = format!("m{i}");
            g.add_link(format!("p{i}"), *u, mid.clone()).unwrap();
            g.add_link(format!("q{i}"), mid, *v).unwrap();
        }
        let m = CircuitMatroid::cycle_matroid(&g);
        let classes: Vec<EdgeSet> =
            m.series_classes().into_iter().filter(|c| c.len() > 1).collect();
        assert_eq!(classes.len(), 3);
        for c in classes {
            assert_eq!(c.len(), 2);
        }
        // all classes trivial in U_{3,6}
        let u36 = CircuitMatroid::uniform(3, 6);
        assert!(u36.parallel_classes().iter().all(|c| c.len() == 1));
        assert!(u36.series_classes().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn cosimplify_contracts_series_classes() {
        let mut g = MultiGraph::new();
        g.add_link("a", "u", "w").unwrap();
        g.add_link("b", "w", "v").unwrap();
        g.add_link("c", "u", "v").unwrap();
        let m = CircuitMatroid::cycle_matroid(&g); // triangle with one edge subdivided
        let c = m.cosimplify();
        assert_eq!(c.size(), 1);
    }

    #[test]
    fn vertical_separations() {
        let u36 = CircuitMatroid::uniform(3, 6);
        assert!(u36.is_vertically_3_connected().unwrap());
        // a series pair in a rank >= 3 matroid gives a vertical 2-separation
        let mut g = MultiGraph::new();
        g.add_loop("l1", "x").unwrap();
        g.add_loop("l2", "x").unwrap();
        g.add_link("a", "x", "y").unwrap();
        g.add_link("b", "y", "z").unwrap();
        g.add_loop("l3", "z").unwrap();
        g.add_loop("l4", "z").unwrap();
        let m = bicircular_of(&g);
        assert!(m.full_rank() >= 3);
        assert!(!m.is_vertically_3_connected().unwrap());
        assert!(!m.vertical_k_separations(2).unwrap().is_empty());
    }

    #[test]
    fn essential_separations_match_cosimplification_route() {
        // two triangles joined by a path: essentially but not vertically 3-connected
        let mut g = MultiGraph::new();
        g.add_loop("l1", "u").unwrap();
        g.add_loop("l2", "u").unwrap();
        g.add_link("p", "u", "v").unwrap();
        g.add_loop("l3", "v").unwrap();
        g.add_loop("l4", "v").unwrap();
        let m = bicircular_of(&g);
        let direct = m.is_essentially_3_connected().unwrap();
        let via_cosimp = m.cosimplify().is_vertically_3_connected().unwrap();
        assert_eq!(direct, via_cosimp);

        for m in [
            CircuitMatroid::uniform(3, 6),
            CircuitMatroid::uniform(2, 4),
            bicircular_of(&doubled_triangle()),
        ] {
            assert_eq!(
                m.is_essentially_3_connected().unwrap(),
                m.cosimplify().is_vertically_3_connected().unwrap(),
            );
        }
    }

    #[test]
    fn two_sum_of_triangles_is_a_four_cycle() {
        let m1 = CircuitMatroid::new(["a", "b", "e"], [labels(&["a", "b", "e"])]).unwrap();
        let m2 = CircuitMatroid::new(["c", "d", "e"], [labels(&["c", "d", "e"])]).unwrap();
        let s = CircuitMatroid::two_sum(&m1, &m2, "e").unwrap();
        assert_eq!(s.circuits(), vec![labels(&["a", "b", "c", "d"])]);
        // identity: 2-sum = parallel connection minus the basepoint
        let p = CircuitMatroid::parallel_connection(&m1, &m2, "e").unwrap();
        assert_eq!(p.delete_element("e").unwrap(), s);
    }

    #[test]
    fn two_sum_rejects_bad_basepoints() {
        let m1 = CircuitMatroid::new(["a", "e"], [labels(&["a", "e"])]).unwrap();
        let m2 = CircuitMatroid::new(["c", "e"], []).unwrap();
        // e is a coloop of m2
        assert!(CircuitMatroid::two_sum(&m1, &m2, "e").is_err());
    }

    #[test]
    fn clones_and_lonely_elements() {
        let u36 = CircuitMatroid::uniform(3, 6);
        for e in u36.ground().to_vec() {
            for f in u36.ground().to_vec() {
                assert!(u36.are_clones(&e, &f).unwrap());
            }
        }
        // clone criterion agrees with the cyclic-flat route
        let m = bicircular_of(&doubled_triangle());
        for e in m.ground().to_vec() {
            for f in m.ground().to_vec() {
                let direct = m.are_clones(&e, &f).unwrap();
                let flats = m.cyclic_flats();
                let via_flats = flats
                    .iter()
                    .all(|fl| fl.contains(&e) == fl.contains(&f));
                assert_eq!(direct, via_flats, "clone mismatch for {e},{f}");
            }
        }
    }

    #[test]
    fn lonely_elements_of_a_triple_line() {
        // three parallel u-v edges plus two loops elsewhere
        let mut g = MultiGraph::new();
        g.add_link("a", "u", "v").unwrap();
        g.add_link("b", "u", "v").unwrap();
        g.add_link("c", "u", "v").unwrap();
        g.add_loop("l1", "u").unwrap();
        g.add_loop("l2", "v").unwrap();
        let m = bicircular_of(&g);
        let line = m.closure(&labels(&["a", "b"])).unwrap();
        assert!(line.contains("c"));
        let lonely = m.lonely_elements(&line).unwrap();
        assert!(lonely.len() >= 3);
        assert!(lonely.contains("a") && lonely.contains("b") && lonely.contains("c"));
        // two lonely elements on one line are clones
        assert!(m.are_clones("a", "b").unwrap());
    }

    #[test]
    fn disagreement_sets() {
        let u23 = CircuitMatroid::uniform(2, 3);
        let u33 = CircuitMatroid::uniform(3, 3);
        assert!(u23.minimal_disagreement_sets(&u23).unwrap().is_empty());
        let d = u23.minimal_disagreement_sets(&u33).unwrap();
        assert_eq!(d, vec![labels(&["1", "2", "3"])]);
        // every minimal disagreement set is a circuit in one and independent in the other
        for y in &d {
            let c23 = u23.circuits().contains(y);
            let c33 = u33.circuits().contains(y);
            let i23 = u23.is_independent(y).unwrap();
            let i33 = u33.is_independent(y).unwrap();
            assert!((c23 && i33) || (c33 && i23));
        }
    }

    #[test]
    fn twin_check_validates() {
        let m = CircuitMatroid::uniform(2, 4);
        assert!(m.twin_check(&m, &labels(&["1", "2"])).is_ok());
        let n = CircuitMatroid::uniform(3, 4);
        assert!(m.twin_check(&n, &labels(&["1"])).is_err());
    }

    #[test]
    fn isomorphism_and_minors() {
        let u36 = CircuitMatroid::uniform(3, 6);
        // relabeled copy
        let relabeled = CircuitMatroid::new(
            ["x1", "x2", "x3", "x4", "x5", "x6"],
            u36.circuits().into_iter().map(|c| {
                c.into_iter().map(|l| format!("x{l}")).collect::<EdgeSet>()
            }),
        )
        .unwrap();
        assert!(u36.is_isomorphic(&relabeled));
        assert!(!u36.is_isomorphic(&CircuitMatroid::uniform(2, 6)));

        let u24 = CircuitMatroid::uniform(2, 4);
        assert!(u36.has_minor(&u24, &Limits::default()).unwrap());
        let m2c3 = CircuitMatroid::cycle_matroid(&doubled_triangle());
        assert!(!u36.has_minor(&m2c3, &Limits::default()).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let m = bicircular_of(&doubled_triangle());
        let text = m.to_text();
        let back = CircuitMatroid::parse(&text).unwrap();
        assert_eq!(m, back);
        assert_eq!(text, back.to_text());
        let doc = serde_json::to_string(&m.to_doc()).unwrap();
        let back2 = CircuitMatroid::from_doc(&serde_json::from_str(&doc).unwrap()).unwrap();
        assert_eq!(m, back2);
    }
}
