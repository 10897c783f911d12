//! Labeled multigraphs with loops and parallel edges.
//!
//! This is the substrate every representation in the crate is built on:
//! subgraph and rank primitives, bicycle enumeration, connectivity,
//! matchings with the Gallai barrier decomposition, and a canonical form
//! for isomorphism tests at desk scale. Vertices and edges are identified
//! by string labels and are always iterated in label order.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Vertex = String;
pub type EdgeLabel = String;
/// A subset of the edge labels of some host graph.
pub type EdgeSet = BTreeSet<EdgeLabel>;
pub type VertexSet = BTreeSet<Vertex>;

/// Endpoint descriptor of an edge: a link joins two distinct vertices, a
/// loop is incident to a single vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Ends {
    Link(Vertex, Vertex),
    Loop(Vertex),
}

impl Ends {
    pub fn is_loop(&self) -> bool {
        matches!(self, Ends::Loop(_))
    }

    pub fn vertices(&self) -> Vec<&Vertex> {
        match self {
            Ends::Link(u, v) => vec![u, v],
            Ends::Loop(v) => vec![v],
        }
    }

    pub fn touches(&self, x: &str) -> bool {
        match self {
            Ends::Link(u, v) => u == x || v == x,
            Ends::Loop(v) => v == x,
        }
    }

    fn normalized(self) -> Ends {
        match self {
            Ends::Link(u, v) if v < u => Ends::Link(v, u),
            other => other,
        }
    }
}

/// A finite multigraph: a vertex set plus a map from edge labels to
/// endpoint descriptors. Isolated vertices are permitted; edge labels are
/// unique and always reference existing vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiGraph {
    vertices: VertexSet,
    edges: BTreeMap<EdgeLabel, Ends>,
}

/// A separation of a graph: a partition of the edge set into two sides,
/// with the boundary `V(A) ∩ V(B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSeparation {
    pub side_a: EdgeSet,
    pub side_b: EdgeSet,
    pub boundary: VertexSet,
}

/// Shape of a bicycle: a theta, two cycles meeting in one vertex, or two
/// disjoint cycles joined by a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BicycleKind {
    Theta,
    TightHandcuffs,
    LooseHandcuffs,
}

/// A minimal edge set with more edges than incident vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicycle {
    pub edges: EdgeSet,
    pub kind: BicycleKind,
}

impl MultiGraph {
    pub fn new() -> Self {
        MultiGraph::default()
    }

    /// Build a graph from vertex ids, links `(label, u, v)` and loops
    /// `(label, v)` in one go; mostly for tests and the catalog.
    pub fn from_parts<'a>(
        vertices: impl IntoIterator<Item = &'a str>,
        links: impl IntoIterator<Item = (&'a str, &'a str, &'a str)>,
        loops: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut g = MultiGraph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for (e, u, v) in links {
            g.add_link(e, u, v)?;
        }
        for (e, v) in loops {
            g.add_loop(e, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: impl Into<Vertex>) {
        self.vertices.insert(v.into());
    }

    /// Adds a link between two distinct vertices, creating the vertices if
    /// they are new.
    pub fn add_link(
        &mut self,
        label: impl Into<EdgeLabel>,
        u: impl Into<Vertex>,
        v: impl Into<Vertex>,
    ) -> Result<()> {
        let (label, u, v) = (label.into(), u.into(), v.into());
        if u == v {
            return Err(Error::invalid(format!("link {label} must have distinct ends")));
        }
        if self.edges.contains_key(&label) {
            return Err(Error::invalid(format!("duplicate edge label {label}")));
        }
        self.vertices.insert(u.clone());
        self.vertices.insert(v.clone());
        self.edges.insert(label, Ends::Link(u, v).normalized());
        Ok(())
    }

    /// Adds a loop at `v`, creating the vertex if it is new.
    pub fn add_loop(&mut self, label: impl Into<EdgeLabel>, v: impl Into<Vertex>) -> Result<()> {
        let (label, v) = (label.into(), v.into());
        if self.edges.contains_key(&label) {
            return Err(Error::invalid(format!("duplicate edge label {label}")));
        }
        self.vertices.insert(v.clone());
        self.edges.insert(label, Ends::Loop(v));
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.iter()
    }

    pub fn vertex_set(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (&EdgeLabel, &Ends)> {
        self.edges.iter()
    }

    pub fn edge_labels(&self) -> EdgeSet {
        self.edges.keys().cloned().collect()
    }

    pub fn ends(&self, label: &str) -> Result<&Ends> {
        self.edges
            .get(label)
            .ok_or_else(|| Error::invalid(format!("unknown edge label {label}")))
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_edge(&self, label: &str) -> bool {
        self.edges.contains_key(label)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degree of `v`: link endpoints count once, loops count twice.
    pub fn degree(&self, v: &str) -> usize {
        self.edges
            .values()
            .map(|e| match e {
                Ends::Link(a, b) => (a == v) as usize + (b == v) as usize,
                Ends::Loop(a) => 2 * ((a == v) as usize),
            })
            .sum()
    }

    /// The links incident to `v`; loops are excluded.
    pub fn star(&self, v: &str) -> EdgeSet {
        self.edges
            .iter()
            .filter(|(_, e)| matches!(e, Ends::Link(a, b) if a == v || b == v))
            .map(|(l, _)| l.clone())
            .collect()
    }

    pub fn loops_at(&self, v: &str) -> EdgeSet {
        self.edges
            .iter()
            .filter(|(_, e)| matches!(e, Ends::Loop(a) if a == v))
            .map(|(l, _)| l.clone())
            .collect()
    }

    pub fn loop_labels(&self) -> EdgeSet {
        self.edges
            .iter()
            .filter(|(_, e)| e.is_loop())
            .map(|(l, _)| l.clone())
            .collect()
    }

    fn check_subset(&self, x: &EdgeSet) -> Result<()> {
        for l in x {
            if !self.edges.contains_key(l) {
                return Err(Error::invalid(format!("unknown edge label {l}")));
            }
        }
        Ok(())
    }

    /// `V(X)`: the vertices with an incident edge in `X`.
    pub fn induced_vertices(&self, x: &EdgeSet) -> Result<VertexSet> {
        self.check_subset(x)?;
        let mut vs = VertexSet::new();
        for l in x {
            for v in self.edges[l].vertices() {
                vs.insert(v.clone());
            }
        }
        Ok(vs)
    }

    /// `a(X)`: the number of connected components of `G[X]` (taken on
    /// `V(X)`) that contain no cycle. Loops and parallel pairs are cycles.
    pub fn acyclic_component_count(&self, x: &EdgeSet) -> Result<usize> {
        self.check_subset(x)?;
        Ok(self
            .edge_components(x)
            .into_iter()
            .filter(|comp| {
                let nv = self.induced_vertices(comp).expect("component labels are valid").len();
                comp.len() < nv
            })
            .count())
    }

    /// Connected components of `G[X]`, each as an edge set.
    pub fn edge_components(&self, x: &EdgeSet) -> Vec<EdgeSet> {
        let mut parent: HashMap<&str, &str> = HashMap::new();
        fn find<'a>(parent: &mut HashMap<&'a str, &'a str>, v: &'a str) -> &'a str {
            let p = *parent.entry(v).or_insert(v);
            if p == v {
                return v;
            }
            let root = find(parent, p);
            parent.insert(v, root);
            root
        }
        for l in x {
            if let Ends::Link(u, v) = &self.edges[l] {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent.insert(ru, rv);
                }
            } else if let Ends::Loop(v) = &self.edges[l] {
                find(&mut parent, v);
            }
        }
        let mut comps: BTreeMap<String, EdgeSet> = BTreeMap::new();
        for l in x {
            let v = self.edges[l].vertices()[0].clone();
            let root = find(&mut parent, self.vertices.get(&v).unwrap()).to_string();
            comps.entry(root).or_default().insert(l.clone());
        }
        comps.into_values().collect()
    }

    /// Whether the whole graph (isolated vertices included) is connected.
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        if self.vertices.len() > 1 && self.edge_components(&self.edge_labels()).len() != 1 {
            return false;
        }
        let covered = self.induced_vertices(&self.edge_labels()).unwrap();
        if self.vertices.len() == 1 {
            return true;
        }
        covered.len() == self.vertices.len()
    }

    /// Whether `G[X]` contains a cycle (a loop, a parallel pair, or a
    /// longer cycle).
    pub fn has_cycle(&self, x: &EdgeSet) -> bool {
        self.edge_components(x).into_iter().any(|comp| {
            let nv = self.induced_vertices(&comp).unwrap().len();
            comp.len() >= nv
        })
    }

    /// Deletes an edge. Endpoints stay, possibly as isolated vertices.
    pub fn delete_edge(&self, label: &str) -> Result<MultiGraph> {
        self.ends(label)?;
        let mut g = self.clone();
        g.edges.remove(label);
        Ok(g)
    }

    /// Deletes a set of edges.
    pub fn delete_edges(&self, labels: &EdgeSet) -> Result<MultiGraph> {
        self.check_subset(labels)?;
        let mut g = self.clone();
        for l in labels {
            g.edges.remove(l);
        }
        Ok(g)
    }

    /// Deletes a vertex together with all incident edges.
    pub fn delete_vertex(&self, v: &str) -> Result<MultiGraph> {
        if !self.vertices.contains(v) {
            return Err(Error::invalid(format!("unknown vertex {v}")));
        }
        let mut g = MultiGraph::new();
        for w in &self.vertices {
            if w != v {
                g.add_vertex(w.clone());
            }
        }
        for (l, e) in &self.edges {
            if !e.touches(v) {
                g.edges.insert(l.clone(), e.clone());
            }
        }
        Ok(g)
    }

    /// Contracts a link: identifies its ends (keeping the lexicographically
    /// smaller vertex id) and keeps all resulting loops and parallels.
    /// Contracting a loop is rejected; at the plain-graph level that
    /// operation is undefined (the biased module owns it).
    pub fn contract_edge(&self, label: &str) -> Result<MultiGraph> {
        let (u, v) = match self.ends(label)? {
            Ends::Loop(_) => {
                return Err(Error::op(format!(
                    "cannot contract loop {label} in a plain graph; contract it at the biased level"
                )))
            }
            Ends::Link(u, v) => (u.clone(), v.clone()),
        };
        let keep = if u < v { u.clone() } else { v.clone() };
        let gone = if u < v { v } else { u };
        let mut g = MultiGraph::new();
        for w in &self.vertices {
            if *w != gone {
                g.add_vertex(w.clone());
            }
        }
        for (l, e) in &self.edges {
            if l == label {
                continue;
            }
            let map = |x: &Vertex| if *x == gone { keep.clone() } else { x.clone() };
            let ne = match e {
                Ends::Link(a, b) => {
                    let (a, b) = (map(a), map(b));
                    if a == b {
                        Ends::Loop(a)
                    } else {
                        Ends::Link(a, b).normalized()
                    }
                }
                Ends::Loop(a) => Ends::Loop(map(a)),
            };
            g.edges.insert(l.clone(), ne);
        }
        Ok(g)
    }

    /// Contracts a set of links one at a time (order does not matter).
    pub fn contract_edges(&self, labels: &EdgeSet) -> Result<MultiGraph> {
        let mut g = self.clone();
        for l in labels {
            g = g.contract_edge(l)?;
        }
        Ok(g)
    }

    /// Renames an edge label in place.
    pub fn relabel_edge(&self, old: &str, new: impl Into<EdgeLabel>) -> Result<MultiGraph> {
        let new = new.into();
        let e = self.ends(old)?.clone();
        if self.edges.contains_key(&new) && new != old {
            return Err(Error::invalid(format!("duplicate edge label {new}")));
        }
        let mut g = self.clone();
        g.edges.remove(old);
        g.edges.insert(new, e);
        Ok(g)
    }

    /// `si(G)`: every parallel class collapsed to its lexicographically
    /// least edge and all loops removed. The vertex set is unchanged.
    pub fn simplify(&self) -> MultiGraph {
        let mut g = MultiGraph::new();
        for v in &self.vertices {
            g.add_vertex(v.clone());
        }
        let mut seen: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
        for (l, e) in &self.edges {
            if let Ends::Link(u, v) = e {
                if seen.insert((u.clone(), v.clone())) {
                    g.edges.insert(l.clone(), e.clone());
                }
            }
        }
        g
    }

    // ------------------------------------------------------------------
    // Cycles and bicycles
    // ------------------------------------------------------------------

    pub(crate) fn compact(&self) -> Compact {
        Compact::from_graph(self)
    }

    /// All cycles of the graph as edge sets: loops, parallel pairs, and
    /// longer simple cycles.
    pub fn cycles(&self) -> Vec<EdgeSet> {
        let c = self.compact();
        c.cycles().iter().map(|m| c.labels_of(*m)).collect()
    }

    /// Enumerates the bicycles: the minimal edge sets `X` with
    /// `|X| > |V(X)|`, each tagged with its shape.
    pub fn enumerate_bicycles(&self) -> Vec<Bicycle> {
        let c = self.compact();
        c.bicycles()
            .into_iter()
            .map(|(m, kind)| Bicycle { edges: c.labels_of(m), kind })
            .collect()
    }

    // ------------------------------------------------------------------
    // Connectivity
    // ------------------------------------------------------------------

    /// All proper separations `(A, B)` with `|V(A) ∩ V(B)| = k`, reported
    /// with the lexicographically least side first.
    pub fn proper_k_separations(&self, k: usize) -> Vec<GraphSeparation> {
        let labels: Vec<&EdgeLabel> = self.edges.keys().collect();
        let m = labels.len();
        let mut out = Vec::new();
        if m < 2 || m > 22 {
            return out;
        }
        // Iterate subsets containing the first edge so each split shows up once.
        for bits in 0..(1u32 << (m - 1)) {
            let mask = (bits << 1) | 1;
            let mut a = EdgeSet::new();
            let mut b = EdgeSet::new();
            for (i, l) in labels.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.insert((*l).clone());
                } else {
                    b.insert((*l).clone());
                }
            }
            if b.is_empty() {
                continue;
            }
            let va = self.induced_vertices(&a).unwrap();
            let vb = self.induced_vertices(&b).unwrap();
            let boundary: VertexSet = va.intersection(&vb).cloned().collect();
            if boundary.len() != k {
                continue;
            }
            if va.difference(&vb).next().is_none() || vb.difference(&va).next().is_none() {
                continue;
            }
            let (side_a, side_b) = if a <= b { (a, b) } else { (b, a) };
            out.push(GraphSeparation { side_a, side_b, boundary });
        }
        out
    }

    /// Whether the graph is 2-connected: at least 3 vertices and no proper
    /// separation of order less than 2.
    pub fn is_2connected(&self) -> bool {
        if self.vertices.len() < 3 {
            return false;
        }
        let all = self.edge_labels();
        if all.is_empty() {
            // No edge separations exist at all, so the condition is vacuous.
            return true;
        }
        if self.edge_components(&all).len() > 1 {
            return false;
        }
        // A proper 1-separation exists exactly when some vertex of V(E)
        // splits the non-isolated part.
        let covered = self.induced_vertices(&all).unwrap();
        for v in &covered {
            let g = self.delete_vertex(v).unwrap();
            let rest: VertexSet = covered.iter().filter(|w| *w != v).cloned().collect();
            if rest.len() < 2 {
                continue;
            }
            let comps = g.edge_components(&g.edge_labels());
            let covered_rest: VertexSet = g.induced_vertices(&g.edge_labels()).unwrap();
            let isolated = rest.iter().filter(|w| !covered_rest.contains(*w)).count();
            if comps.len() + isolated > 1 {
                return false;
            }
        }
        true
    }

    /// The edges whose contraction leaves a 2-connected graph. Requires a
    /// 2-connected graph on at least 4 vertices; loops are never
    /// contractible.
    pub fn contractible_edges(&self) -> Result<EdgeSet> {
        if !self.is_2connected() || self.vertex_count() < 4 {
            return Err(Error::invalid(
                "contractible_edges requires a 2-connected graph on at least 4 vertices",
            ));
        }
        let mut out = EdgeSet::new();
        for (l, e) in &self.edges {
            if e.is_loop() {
                continue;
            }
            if self.contract_edge(l)?.is_2connected() {
                out.insert(l.clone());
            }
        }
        Ok(out)
    }

    // ------------------------------------------------------------------
    // Matchings
    // ------------------------------------------------------------------

    /// A maximum matching (links only), deterministic for a given graph.
    pub fn maximum_matching(&self) -> EdgeSet {
        Matcher::new(self).matching()
    }

    /// Size of a maximum matching.
    pub fn matching_number(&self) -> usize {
        Matcher::new(self).nu_all()
    }

    /// The Gallai partition `(A, B, C)`: `A` holds the vertices missed by
    /// some maximum matching, `B = N(A)`, `C` the rest.
    pub fn barrier_partition(&self) -> (VertexSet, VertexSet, VertexSet) {
        let m = Matcher::new(self);
        let nu = m.nu_all();
        let mut a = VertexSet::new();
        for v in &self.vertices {
            if m.nu_without(v) == nu {
                a.insert(v.clone());
            }
        }
        let mut b = VertexSet::new();
        for v in &a {
            for (_, e) in &self.edges {
                if let Ends::Link(x, y) = e {
                    if x == v && !a.contains(y) {
                        b.insert(y.clone());
                    }
                    if y == v && !a.contains(x) {
                        b.insert(x.clone());
                    }
                }
            }
        }
        let c: VertexSet =
            self.vertices.iter().filter(|v| !a.contains(*v) && !b.contains(*v)).cloned().collect();
        (a, b, c)
    }

    /// Whether `G - v` has a perfect matching for every vertex `v`.
    pub fn is_hypomatchable(&self) -> bool {
        if self.vertices.is_empty() || self.vertices.len() % 2 == 0 {
            return false;
        }
        let m = Matcher::new(self);
        self.vertices.iter().all(|v| 2 * m.nu_without(v) == (self.vertices.len() - 1))
    }

    // ------------------------------------------------------------------
    // Canonical form
    // ------------------------------------------------------------------

    /// A label-independent canonical string: two graphs get the same string
    /// exactly when they are isomorphic as multigraphs (loops and
    /// multiplicities respected, labels ignored). Uses the default vertex
    /// cap of 10.
    pub fn canonical_form(&self) -> Result<String> {
        self.canonical_form_capped(10)
    }

    pub fn canonical_form_capped(&self, cap: usize) -> Result<String> {
        if self.vertices.len() > cap {
            return Err(Error::limit(format!(
                "canonical form capped at {cap} vertices, graph has {}",
                self.vertices.len()
            )));
        }
        Ok(self.compact().canonical_string())
    }

    pub fn is_isomorphic(&self, other: &MultiGraph) -> Result<bool> {
        if self.vertices.len() != other.vertices.len() || self.edges.len() != other.edges.len() {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }

    // ------------------------------------------------------------------
    // Text format
    // ------------------------------------------------------------------

    /// Parses the line-oriented graph format: `vertex <id>`,
    /// `edge <label> <u> <v>`, `loop <label> <v>`, `#` comments.
    pub fn parse(text: &str) -> Result<MultiGraph> {
        let mut g = MultiGraph::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "vertex" if toks.len() == 2 => g.add_vertex(toks[1]),
                "edge" if toks.len() == 4 => g
                    .add_link(toks[1], toks[2], toks[3])
                    .map_err(|e| Error::parse(lineno, e.to_string()))?,
                "loop" if toks.len() == 3 => g
                    .add_loop(toks[1], toks[2])
                    .map_err(|e| Error::parse(lineno, e.to_string()))?,
                other => {
                    return Err(Error::parse(lineno, format!("unrecognised directive `{other}`")))
                }
            }
        }
        Ok(g)
    }

    /// Emits the text format; stable byte-for-byte given the label order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let covered = self.induced_vertices(&self.edge_labels()).unwrap_or_default();
        for v in &self.vertices {
            if !covered.contains(v) {
                out.push_str(&format!("vertex {v}\n"));
            }
        }
        for (l, e) in &self.edges {
            match e {
                Ends::Link(u, v) => out.push_str(&format!("edge {l} {u} {v}\n")),
                Ends::Loop(v) => out.push_str(&format!("loop {l} {v}\n")),
            }
        }
        out
    }

    /// Structured (JSON) mirror of the text format.
    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self.vertices.iter().cloned().collect(),
            edges: self
                .edges
                .iter()
                .map(|(l, e)| EdgeDoc {
                    label: l.clone(),
                    ends: e.vertices().into_iter().cloned().collect(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<MultiGraph> {
        let mut g = MultiGraph::new();
        for v in &doc.vertices {
            g.add_vertex(v.clone());
        }
        for e in &doc.edges {
            match e.ends.as_slice() {
                [v] => g.add_loop(e.label.clone(), v.clone())?,
                [u, v] => g.add_link(e.label.clone(), u.clone(), v.clone())?,
                _ => {
                    return Err(Error::invalid(format!(
                        "edge {} must have one or two ends",
                        e.label
                    )))
                }
            }
        }
        Ok(g)
    }
}

/// JSON mirror of a graph document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub label: EdgeLabel,
    /// One entry for a loop, two for a link.
    pub ends: Vec<Vertex>,
}

// ----------------------------------------------------------------------
// Compact indexed view used by the search-heavy algorithms
// ----------------------------------------------------------------------

/// Index-based view of a graph: vertices `0..n`, edges as endpoint pairs
/// (loops as `(v, v)`), edge subsets as `u64` masks in label order.
#[derive(Debug, Clone)]
pub(crate) struct Compact {
    pub n: usize,
    pub ends: Vec<(usize, usize)>,
    pub labels: Vec<EdgeLabel>,
    pub verts: Vec<Vertex>,
}

impl Compact {
    pub fn from_graph(g: &MultiGraph) -> Compact {
        let verts: Vec<Vertex> = g.vertices.iter().cloned().collect();
        let vidx: HashMap<&Vertex, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut labels = Vec::new();
        let mut ends = Vec::new();
        for (l, e) in &g.edges {
            labels.push(l.clone());
            ends.push(match e {
                Ends::Link(u, v) => (vidx[u], vidx[v]),
                Ends::Loop(v) => (vidx[v], vidx[v]),
            });
        }
        Compact { n: verts.len(), ends, labels, verts }
    }

    pub fn labels_of(&self, mask: u64) -> EdgeSet {
        (0..self.labels.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.labels[i].clone())
            .collect()
    }

    pub fn vertex_mask(&self, edge_mask: u64) -> u64 {
        let mut vm = 0u64;
        for i in 0..self.ends.len() {
            if edge_mask >> i & 1 == 1 {
                vm |= 1 << self.ends[i].0;
                vm |= 1 << self.ends[i].1;
            }
        }
        vm
    }

    /// Number of connected components of the subgraph on the edges in
    /// `mask` (vertices restricted to incident ones).
    pub fn component_count(&self, mask: u64) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for i in 0..self.ends.len() {
            if mask >> i & 1 == 1 {
                let (u, v) = self.ends[i];
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                }
            }
        }
        let vm = self.vertex_mask(mask);
        let mut roots = HashSet::new();
        for v in 0..self.n {
            if vm >> v & 1 == 1 {
                roots.insert(find(&mut parent, v));
            }
        }
        roots.len()
    }

    pub fn is_connected_mask(&self, mask: u64) -> bool {
        mask == 0 || self.component_count(mask) == 1
    }

    /// All cycles as edge masks: loops, parallel pairs, longer cycles.
    pub fn cycles(&self) -> Vec<u64> {
        let m = self.ends.len();
        let mut out: BTreeSet<u64> = BTreeSet::new();
        for i in 0..m {
            if self.ends[i].0 == self.ends[i].1 {
                out.insert(1 << i);
            }
        }
        // Walk simple paths anchored at their minimum vertex.
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.ends.iter().enumerate() {
            if u != v {
                adj[u].push((v, i));
                adj[v].push((u, i));
            }
        }
        fn walk(
            adj: &[Vec<(usize, usize)>],
            start: usize,
            cur: usize,
            vmask: u64,
            emask: u64,
            out: &mut BTreeSet<u64>,
        ) {
            for &(nxt, ei) in &adj[cur] {
                if emask >> ei & 1 == 1 {
                    continue;
                }
                if nxt == start {
                    if (emask | (1 << ei)).count_ones() >= 2 {
                        out.insert(emask | (1 << ei));
                    }
                    continue;
                }
                if nxt < start || vmask >> nxt & 1 == 1 {
                    continue;
                }
                walk(adj, start, nxt, vmask | (1 << nxt), emask | (1 << ei), out);
            }
        }
        for s in 0..self.n {
            walk(&adj, s, s, 1 << s, 0, &mut out);
        }
        out.into_iter().collect()
    }

    /// All bicycles as `(edge mask, shape)`.
    pub fn bicycles(&self) -> Vec<(u64, BicycleKind)> {
        let cycles = self.cycles();
        let mut found: BTreeSet<u64> = BTreeSet::new();
        let vmasks: Vec<u64> = cycles.iter().map(|&c| self.vertex_mask(c)).collect();
        for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                if vmasks[i] & vmasks[j] != 0 {
                    let u = cycles[i] | cycles[j];
                    let ne = u.count_ones() as usize;
                    let nv = self.vertex_mask(u).count_ones() as usize;
                    if ne == nv + 1 && self.is_connected_mask(u) {
                        found.insert(u);
                    }
                } else {
                    // Disjoint cycles: add every linking path that meets
                    // each cycle exactly once.
                    for p in self.linking_paths(vmasks[i], vmasks[j]) {
                        found.insert(cycles[i] | cycles[j] | p);
                    }
                }
            }
        }
        // Keep the inclusion-minimal ones.
        let list: Vec<u64> = found.iter().cloned().collect();
        let mut out = Vec::new();
        'outer: for &u in &list {
            for &w in &list {
                if w != u && w & u == w {
                    continue 'outer;
                }
            }
            out.push((u, self.classify_bicycle(u)));
        }
        out
    }

    /// Simple paths from a vertex of `va` to a vertex of `vb` whose
    /// internal vertices avoid both sets; returned as edge masks.
    fn linking_paths(&self, va: u64, vb: u64) -> Vec<u64> {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.ends.iter().enumerate() {
            if u != v {
                adj[u].push((v, i));
                adj[v].push((u, i));
            }
        }
        let mut out = Vec::new();
        fn go(
            adj: &[Vec<(usize, usize)>],
            cur: usize,
            va: u64,
            vb: u64,
            vmask: u64,
            emask: u64,
            out: &mut Vec<u64>,
        ) {
            for &(nxt, ei) in &adj[cur] {
                if emask >> ei & 1 == 1 || va >> nxt & 1 == 1 {
                    continue;
                }
                if vb >> nxt & 1 == 1 {
                    out.push(emask | (1 << ei));
                    continue;
                }
                if vmask >> nxt & 1 == 1 {
                    continue;
                }
                go(adj, nxt, va, vb, vmask | (1 << nxt), emask | (1 << ei), out);
            }
        }
        for s in 0..self.n {
            if va >> s & 1 == 1 {
                go(&adj, s, va, vb, 0, 0, &mut out);
            }
        }
        out
    }

    fn classify_bicycle(&self, mask: u64) -> BicycleKind {
        let inside: Vec<u64> =
            self.cycles().into_iter().filter(|c| c & mask == *c).collect();
        match inside.len() {
            3 => BicycleKind::Theta,
            2 => {
                if self.vertex_mask(inside[0]) & self.vertex_mask(inside[1]) != 0 {
                    BicycleKind::TightHandcuffs
                } else {
                    BicycleKind::LooseHandcuffs
                }
            }
            k => unreachable!("a bicycle contains 2 or 3 cycles, found {k}"),
        }
    }

    // Canonical form: colour refinement, then exhaustive minimisation over
    // the colour-respecting vertex orders.
    pub fn canonical_string(&self) -> String {
        if self.n == 0 {
            return "0;".to_string();
        }
        let colors = self.refined_colors();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (colors[v], v));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match classes.last() {
                Some(c) if colors[c[0]] == colors[v] => classes.last_mut().unwrap().push(v),
                _ => classes.push(vec![v]),
            }
        }
        let mut best: Option<Vec<(usize, usize)>> = None;
        let mut perm = vec![0usize; self.n];
        self.minimise(&classes, 0, &mut perm, &mut best);
        let best = best.unwrap();
        let mut s = format!("{};", self.n);
        for (u, v) in best {
            s.push_str(&format!("{u},{v};"));
        }
        s
    }

    fn encode(&self, perm: &[usize]) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .ends
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        pairs
    }

    fn minimise(
        &self,
        classes: &[Vec<usize>],
        class_idx: usize,
        perm: &mut Vec<usize>,
        best: &mut Option<Vec<(usize, usize)>>,
    ) {
        if class_idx == classes.len() {
            let enc = self.encode(perm);
            if best.as_ref().map_or(true, |b| enc < *b) {
                *best = Some(enc);
            }
            return;
        }
        let start: usize = classes[..class_idx].iter().map(|c| c.len()).sum();
        let cls = &classes[class_idx];
        let mut idx: Vec<usize> = (0..cls.len()).collect();
        permute(&mut idx, 0, &mut |p| {
            for (slot, &i) in p.iter().enumerate() {
                perm[cls[i]] = start + slot;
            }
            self.minimise(classes, class_idx + 1, perm, best);
        });
    }

    fn refined_colors(&self) -> Vec<u64> {
        let mut loops = vec![0usize; self.n];
        for &(u, v) in &self.ends {
            if u == v {
                loops[u] += 1;
            }
        }
        let mut colors: Vec<u64> = (0..self.n).map(|v| loops[v] as u64).collect();
        for _ in 0..self.n {
            let mut keys: Vec<(u64, Vec<(u64, usize)>)> = Vec::with_capacity(self.n);
            for v in 0..self.n {
                let mut nb: BTreeMap<u64, usize> = BTreeMap::new();
                for &(a, b) in &self.ends {
                    if a == b {
                        continue;
                    }
                    if a == v {
                        *nb.entry(colors[b]).or_insert(0) += 1;
                    } else if b == v {
                        *nb.entry(colors[a]).or_insert(0) += 1;
                    }
                }
                keys.push((colors[v], nb.into_iter().collect()));
            }
            let mut sorted: Vec<&(u64, Vec<(u64, usize)>)> = keys.iter().collect();
            sorted.sort();
            sorted.dedup();
            let newc: Vec<u64> = (0..self.n)
                .map(|v| sorted.binary_search(&&keys[v]).unwrap() as u64)
                .collect();
            if newc == colors {
                break;
            }
            colors = newc;
        }
        colors
    }
}

fn permute<F: FnMut(&[usize])>(items: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

// ----------------------------------------------------------------------
// Maximum matching by subset DP over vertices (links only)
// ----------------------------------------------------------------------

struct Matcher {
    verts: Vec<Vertex>,
    // adjacency by vertex index; parallel links collapsed, lowest label kept
    adj: Vec<Vec<(usize, EdgeLabel)>>,
}

impl Matcher {
    fn new(g: &MultiGraph) -> Matcher {
        let verts: Vec<Vertex> = g.vertices.iter().cloned().collect();
        let vidx: HashMap<&Vertex, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut best: BTreeMap<(usize, usize), EdgeLabel> = BTreeMap::new();
        for (l, e) in g.edges() {
            if let Ends::Link(u, v) = e {
                let (a, b) = (vidx[u].min(vidx[v]), vidx[u].max(vidx[v]));
                best.entry((a, b)).or_insert_with(|| l.clone());
            }
        }
        let mut adj = vec![Vec::new(); verts.len()];
        for (&(a, b), l) in &best {
            adj[a].push((b, l.clone()));
            adj[b].push((a, l.clone()));
        }
        Matcher { verts, adj }
    }

    fn nu(&self, avail: u64, memo: &mut HashMap<u64, usize>) -> usize {
        if avail == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&avail) {
            return v;
        }
        let first = avail.trailing_zeros() as usize;
        let without = avail & !(1u64 << first);
        let mut best = self.nu(without, memo);
        for &(nb, _) in &self.adj[first] {
            if without >> nb & 1 == 1 {
                best = best.max(1 + self.nu(without & !(1u64 << nb), memo));
            }
        }
        memo.insert(avail, best);
        best
    }

    fn full_mask(&self) -> u64 {
        if self.verts.is_empty() {
            0
        } else {
            (1u64 << self.verts.len()) - 1
        }
    }

    fn nu_all(&self) -> usize {
        let mut memo = HashMap::new();
        self.nu(self.full_mask(), &mut memo)
    }

    fn nu_without(&self, v: &str) -> usize {
        let idx = self.verts.iter().position(|w| w == v).expect("vertex exists");
        let mut memo = HashMap::new();
        self.nu(self.full_mask() & !(1u64 << idx), &mut memo)
    }

    fn matching(&self) -> EdgeSet {
        let mut memo = HashMap::new();
        let mut avail = self.full_mask();
        let mut out = EdgeSet::new();
        while avail != 0 {
            let target = self.nu(avail, &mut memo);
            if target == 0 {
                break;
            }
            let first = avail.trailing_zeros() as usize;
            let without = avail & !(1u64 << first);
            if self.nu(without, &mut memo) == target {
                avail = without;
                continue;
            }
            let mut picked = false;
            for &(nb, ref l) in &self.adj[first] {
                if without >> nb & 1 == 1
                    && 1 + self.nu(without & !(1u64 << nb), &mut memo) == target
                {
                    out.insert(l.clone());
                    avail = without & !(1u64 << nb);
                    picked = true;
                    break;
                }
            }
            debug_assert!(picked, "matching reconstruction is consistent with nu");
        }
        out
    }
}

/// Breadth-first distances in the underlying simple graph; used by tests.
pub fn link_distance(g: &MultiGraph, from: &str, to: &str) -> Option<usize> {
    let mut dist: HashMap<&str, usize> = HashMap::new();
    let mut q = VecDeque::new();
    dist.insert(from, 0);
    q.push_back(from.to_string());
    while let Some(v) = q.pop_front() {
        let d = dist[v.as_str()];
        if v == to {
            return Some(d);
        }
        for (_, e) in g.edges() {
            if let Ends::Link(a, b) = e {
                let nxt = if *a == v {
                    b
                } else if *b == v {
                    a
                } else {
                    continue;
                };
                if !dist.contains_key(nxt.as_str()) {
                    dist.insert(nxt, d + 1);
                    q.push_back(nxt.clone());
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doubled_triangle() -> MultiGraph {
        // 2C3: vertices a b c, each pair joined by two edges.
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

    fn k4() -> MultiGraph {
        MultiGraph::from_parts(
            ["1", "2", "3", "4"],
            [
                ("e12", "1", "2"),
                ("e13", "1", "3"),
                ("e14", "1", "4"),
                ("e23", "2", "3"),
                ("e24", "2", "4"),
                ("e34", "3", "4"),
            ],
            [],
        )
        .unwrap()
    }

    fn cycle(n: usize) -> MultiGraph {
        let mut g = MultiGraph::new();
        for i in 0..n {
            g.add_link(format!("e{i}"), format!("v{i}"), format!("v{}", (i + 1) % n)).unwrap();
        }
        g
    }

    fn set(labels: &[&str]) -> EdgeSet {
        labels.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn induced_vertices_cases() {
        let g = doubled_triangle();
        assert!(g.induced_vertices(&EdgeSet::new()).unwrap().is_empty());
        let mut h = g.clone();
        h.add_loop("l", "a").unwrap();
        assert_eq!(h.induced_vertices(&set(&["l"])).unwrap(), ["a".to_string()].into());
        assert_eq!(
            g.induced_vertices(&set(&["1", "2"])).unwrap(),
            ["a".to_string(), "b".to_string()].into()
        );
        assert!(g.induced_vertices(&set(&["nope"])).is_err());
    }

    #[test]
    fn acyclic_component_count_cases() {
        // 3-edge path
        let mut p = MultiGraph::new();
        p.add_link("a", "1", "2").unwrap();
        p.add_link("b", "2", "3").unwrap();
        p.add_link("c", "3", "4").unwrap();
        assert_eq!(p.acyclic_component_count(&p.edge_labels()).unwrap(), 1);
        let t = cycle(3);
        assert_eq!(t.acyclic_component_count(&t.edge_labels()).unwrap(), 0);
        // path plus a disjoint triangle
        let mut u = p.clone();
        u.add_link("x", "t1", "t2").unwrap();
        u.add_link("y", "t2", "t3").unwrap();
        u.add_link("z", "t1", "t3").unwrap();
        assert_eq!(u.acyclic_component_count(&u.edge_labels()).unwrap(), 1);
    }

    #[test]
    fn bicycles_triple_edge_is_theta() {
        let mut g = MultiGraph::new();
        g.add_link("1", "u", "v").unwrap();
        g.add_link("2", "u", "v").unwrap();
        g.add_link("3", "u", "v").unwrap();
        let b = g.enumerate_bicycles();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].edges, set(&["1", "2", "3"]));
        assert_eq!(b[0].kind, BicycleKind::Theta);
    }

    #[test]
    fn bicycles_two_loops_tight() {
        let mut g = MultiGraph::new();
        g.add_loop("1", "v").unwrap();
        g.add_loop("2", "v").unwrap();
        let b = g.enumerate_bicycles();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].kind, BicycleKind::TightHandcuffs);
        assert_eq!(b[0].edges.len(), 2);
    }

    /// Independent oracle: minimal subsets with more edges than vertices,
    /// by scanning all edge subsets.
    fn bicycles_brute(g: &MultiGraph) -> BTreeSet<EdgeSet> {
        let labels: Vec<EdgeLabel> = g.edge_labels().into_iter().collect();
        let m = labels.len();
        let mut hits: Vec<EdgeSet> = Vec::new();
        for mask in 1u64..(1 << m) {
            let x: EdgeSet = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| labels[i].clone())
                .collect();
            let nv = g.induced_vertices(&x).unwrap().len();
            if x.len() > nv {
                hits.push(x);
            }
        }
        hits.iter()
            .filter(|x| !hits.iter().any(|y| *y != **x && y.is_subset(x)))
            .cloned()
            .collect()
    }

    #[test]
    fn bicycles_of_doubled_triangle_match_brute_force() {
        let g = doubled_triangle();
        let fast: BTreeSet<EdgeSet> =
            g.enumerate_bicycles().into_iter().map(|b| b.edges).collect();
        let brute = bicycles_brute(&g);
        assert_eq!(fast, brute);
        // every 4-subset of the six edges is a bicycle here
        assert_eq!(fast.len(), 15);
        // unions of two parallel pairs are tight handcuffs, the rest thetas
        let tagged = g.enumerate_bicycles();
        let tight = tagged.iter().filter(|b| b.kind == BicycleKind::TightHandcuffs).count();
        assert_eq!(tight, 3);
    }

    #[test]
    fn bicycle_minimality_is_an_antichain() {
        let g = doubled_triangle();
        let bs = g.enumerate_bicycles();
        for x in &bs {
            for y in &bs {
                if x.edges != y.edges {
                    assert!(!x.edges.is_subset(&y.edges));
                }
            }
        }
    }

    #[test]
    fn delete_and_contract() {
        let c4 = cycle(4);
        let c3 = c4.contract_edge("e0").unwrap();
        assert_eq!(c3.vertex_count(), 3);
        assert_eq!(c3.edge_count(), 3);
        assert!(c3.is_isomorphic(&cycle(3)).unwrap());

        let mut pp = MultiGraph::new();
        pp.add_link("1", "u", "v").unwrap();
        pp.add_link("2", "u", "v").unwrap();
        let single = pp.delete_edge("1").unwrap();
        assert_eq!(single.edge_count(), 1);
        assert_eq!(single.vertex_count(), 2);

        let k = k4().contract_edge("e12").unwrap();
        assert_eq!(k.vertex_count(), 3);
        assert_eq!(k.edge_count(), 5);
        // the merged vertex is doubly joined to each of the other two
        let parallel_pairs = {
            let mut seen: BTreeMap<Ends, usize> = BTreeMap::new();
            for (_, e) in k.edges() {
                *seen.entry(e.clone()).or_insert(0) += 1;
            }
            seen.values().filter(|&&c| c == 2).count()
        };
        assert_eq!(parallel_pairs, 2);

        let mut l = MultiGraph::new();
        l.add_loop("x", "v").unwrap();
        assert!(matches!(l.contract_edge("x"), Err(Error::InvalidOperation(_))));
    }

    #[test]
    fn two_connectivity() {
        assert!(k4().is_2connected());
        assert!(k4().proper_k_separations(1).is_empty());
        // two triangles sharing a vertex
        let mut g = cycle(3);
        g.add_link("x", "v0", "w1").unwrap();
        g.add_link("y", "w1", "w2").unwrap();
        g.add_link("z", "w2", "v0").unwrap();
        assert!(!g.is_2connected());
        let c5 = cycle(5);
        assert!(c5.is_2connected());
        // every pair of nonadjacent vertices of C5 gives a proper 2-separation
        assert_eq!(c5.proper_k_separations(2).len(), 5);
    }

    #[test]
    fn contractible_edges_examples() {
        let c4 = cycle(4);
        assert_eq!(c4.contractible_edges().unwrap(), c4.edge_labels());
        assert_eq!(k4().contractible_edges().unwrap(), k4().edge_labels());
        // K_{2,3}
        let mut k23 = MultiGraph::new();
        for (i, x) in ["x1", "x2", "x3"].iter().enumerate() {
            k23.add_link(format!("a{i}"), "u", *x).unwrap();
            k23.add_link(format!("b{i}"), "w", *x).unwrap();
        }
        assert_eq!(k23.contractible_edges().unwrap(), k23.edge_labels());
        assert!(cycle(3).contractible_edges().is_err());
    }

    /// Independent matching oracle: scan all subsets of the links.
    fn matching_brute(g: &MultiGraph) -> usize {
        let links: Vec<(EdgeLabel, Vertex, Vertex)> = g
            .edges()
            .filter_map(|(l, e)| match e {
                Ends::Link(u, v) => Some((l.clone(), u.clone(), v.clone())),
                Ends::Loop(_) => None,
            })
            .collect();
        let mut best = 0;
        for mask in 0u32..(1 << links.len()) {
            let mut used = VertexSet::new();
            let mut ok = true;
            let mut size = 0;
            for (i, (_, u, v)) in links.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if !used.insert(u.clone()) || !used.insert(v.clone()) {
                        ok = false;
                        break;
                    }
                    size += 1;
                }
            }
            if ok {
                best = best.max(size);
            }
        }
        best
    }

    #[test]
    fn matching_and_barrier() {
        let c4 = cycle(4);
        assert_eq!(c4.maximum_matching().len(), 2);
        let (a, b, c) = c4.barrier_partition();
        assert!(a.is_empty() && b.is_empty());
        assert_eq!(c.len(), 4);

        let c5 = cycle(5);
        let (a, b, _) = c5.barrier_partition();
        assert_eq!(a.len(), 5);
        assert!(b.is_empty());
        assert!(c5.is_hypomatchable());

        // star K_{1,3}: oracle says nu = 1, leaves exposed
        let mut star = MultiGraph::new();
        star.add_link("a", "c", "x").unwrap();
        star.add_link("b", "c", "y").unwrap();
        star.add_link("d", "c", "z").unwrap();
        assert_eq!(matching_brute(&star), 1);
        assert_eq!(star.maximum_matching().len(), 1);
        let (a, b, c) = star.barrier_partition();
        assert_eq!(a, ["x".to_string(), "y".to_string(), "z".to_string()].into());
        assert_eq!(b, ["c".to_string()].into());
        assert!(c.is_empty());
    }

    #[test]
    fn gallai_clauses_hold_on_small_graphs() {
        // check the three clauses verbatim on a few shapes
        let graphs = vec![cycle(4), cycle(5), k4(), {
            let mut g = MultiGraph::new();
            g.add_link("a", "c", "x").unwrap();
            g.add_link("b", "c", "y").unwrap();
            g.add_link("d", "c", "z").unwrap();
            g
        }];
        for g in graphs {
            let (a, b, _c) = g.barrier_partition();
            let mut gb = g.clone();
            for v in &b {
                gb = gb.delete_vertex(v).unwrap();
            }
            let comps = {
                // components of G - B over all remaining vertices
                let mut seen: VertexSet = VertexSet::new();
                let mut comps: Vec<VertexSet> = Vec::new();
                for v in gb.vertex_set().clone() {
                    if seen.contains(&v) {
                        continue;
                    }
                    let mut comp = VertexSet::new();
                    let mut q = vec![v.clone()];
                    while let Some(x) = q.pop() {
                        if !comp.insert(x.clone()) {
                            continue;
                        }
                        for (_, e) in gb.edges() {
                            if let Ends::Link(p, q2) = e {
                                if *p == x && !comp.contains(q2) {
                                    q.push(q2.clone());
                                }
                                if *q2 == x && !comp.contains(p) {
                                    q.push(p.clone());
                                }
                            }
                        }
                    }
                    seen.extend(comp.iter().cloned());
                    comps.push(comp);
                }
                comps
            };
            let mut odd_comps: Vec<VertexSet> = Vec::new();
            for comp in comps {
                let sub = {
                    let mut s = MultiGraph::new();
                    for v in &comp {
                        s.add_vertex(v.clone());
                    }
                    for (l, e) in gb.edges() {
                        if let Ends::Link(u, v) = e {
                            if comp.contains(u) && comp.contains(v) {
                                s.add_link(l.clone(), u.clone(), v.clone()).unwrap();
                            }
                        }
                    }
                    s
                };
                if comp.len() % 2 == 1 {
                    // clause (i)
                    assert!(sub.is_hypomatchable() || comp.len() == 1);
                    assert!(comp.iter().all(|v| a.contains(v)));
                    odd_comps.push(comp);
                } else {
                    // clause (ii)
                    assert_eq!(2 * sub.matching_number(), comp.len());
                    assert!(comp.iter().all(|v| !a.contains(v) && !b.contains(v)));
                }
            }
            // clause (iii)
            let bvec: Vec<&Vertex> = b.iter().collect();
            for mask in 1u32..(1 << bvec.len()) {
                let u: VertexSet = bvec
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| (*v).clone())
                    .collect();
                let nu: VertexSet = g
                    .edges()
                    .filter_map(|(_, e)| match e {
                        Ends::Link(x, y) if u.contains(x) && !u.contains(y) => Some(y.clone()),
                        Ends::Link(x, y) if u.contains(y) && !u.contains(x) => Some(x.clone()),
                        _ => None,
                    })
                    .collect();
                let touched = odd_comps.iter().filter(|c| c.iter().any(|v| nu.contains(v))).count();
                assert!(touched > u.len());
            }
        }
    }

    #[test]
    fn simplify_examples() {
        assert!(doubled_triangle().simplify().is_isomorphic(&cycle(3)).unwrap());
        let mut g = MultiGraph::new();
        g.add_loop("1", "v").unwrap();
        g.add_loop("2", "v").unwrap();
        let s = g.simplify();
        assert_eq!(s.edge_count(), 0);
        assert_eq!(s.vertex_count(), 1);
    }

    #[test]
    fn canonical_form_examples() {
        let g = k4();
        let mut h = MultiGraph::new();
        for (l, e) in g.edges() {
            if let Ends::Link(u, v) = e {
                h.add_link(l.clone(), format!("w{u}"), format!("w{v}")).unwrap();
            }
        }
        assert_eq!(g.canonical_form().unwrap(), h.canonical_form().unwrap());

        let mut triple = MultiGraph::new();
        triple.add_link("1", "u", "v").unwrap();
        triple.add_link("2", "u", "v").unwrap();
        triple.add_link("3", "u", "v").unwrap();
        let mut loop_double = MultiGraph::new();
        loop_double.add_link("1", "u", "v").unwrap();
        loop_double.add_link("2", "u", "v").unwrap();
        loop_double.add_loop("3", "u").unwrap();
        assert_ne!(triple.canonical_form().unwrap(), loop_double.canonical_form().unwrap());
    }

    #[test]
    fn text_round_trip() {
        let mut g = doubled_triangle();
        g.add_loop("l", "a").unwrap();
        g.add_vertex("iso");
        let text = g.to_text();
        let back = MultiGraph::parse(&text).unwrap();
        assert_eq!(g, back);
        assert_eq!(text, back.to_text());
        let doc = serde_json::to_string(&g.to_doc()).unwrap();
        let back2 = MultiGraph::from_doc(&serde_json::from_str(&doc).unwrap()).unwrap();
        assert_eq!(g, back2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = MultiGraph::parse("vertex a\nbogus line\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
