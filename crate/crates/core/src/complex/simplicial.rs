use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;

use crate::{Error, Result};

pub type VertexId = u32;

/// An oriented simplex: a strictly increasing tuple of vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Sorts and deduplicates the vertices.
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Dimension; the empty simplex has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// Codimension-one faces with their boundary signs `(-1)^i`.
    pub fn boundary_faces(&self) -> impl Iterator<Item = (i8, Simplex)> + '_ {
        let n = self.0.len();
        (0..if n > 1 { n } else { 0 }).map(move |i| {
            let mut face = self.0.clone();
            face.remove(i);
            (if i % 2 == 0 { 1 } else { -1 }, Simplex(face))
        })
    }

    /// All non-empty faces, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (1..=self.0.len()).flat_map(move |k| {
            self.0
                .iter()
                .copied()
                .combinations(k)
                .map(Simplex)
        })
    }

    pub fn with_vertex(&self, v: VertexId) -> Simplex {
        let mut vs = self.0.clone();
        vs.push(v);
        Simplex::new(vs)
    }

    pub fn without_vertex(&self, v: VertexId) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&u| u != v).collect())
    }

    /// The face spanned by the vertices satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(VertexId) -> bool) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&v| keep(v)).collect())
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0.iter().join(","))
    }
}

/// A finite simplicial complex, closed under faces, with named vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    names: Vec<String>,
    by_dim: Vec<Vec<Simplex>>,
    index: HashMap<Simplex, usize>,
}

impl SimplicialComplex {
    /// Builds the face closure of `generators` over the vertex set `names`.
    /// Vertex ids are indices into `names`.
    pub fn from_simplices(names: Vec<String>, generators: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, n) in names.iter().enumerate() {
            if !seen.insert(n.as_str()) {
                return Err(Error::Parse(format!("duplicate vertex name '{n}' (index {i})")));
            }
        }
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for g in generators {
            if g.is_empty() {
                continue;
            }
            if let Some(&v) = g.vertices().iter().find(|&&v| v as usize >= names.len()) {
                return Err(Error::NotInComplex(format!("vertex id {v} out of range")));
            }
            if all.contains(&g) {
                continue;
            }
            all.extend(g.faces());
        }
        // isolated vertices listed in `names` are part of the complex
        for v in 0..names.len() {
            all.insert(Simplex::vertex(v as VertexId));
        }
        Ok(Self::from_closed_set(names, all))
    }

    fn from_closed_set(names: Vec<String>, all: BTreeSet<Simplex>) -> Self {
        let top = all.iter().map(|s| s.dim()).max().unwrap_or(-1);
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); (top + 1) as usize];
        for s in all {
            by_dim[s.dim() as usize].push(s);
        }
        let mut index = HashMap::new();
        for level in &by_dim {
            for (i, s) in level.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        SimplicialComplex { names, by_dim, index }
    }

    pub fn empty() -> Self {
        SimplicialComplex {
            names: Vec::new(),
            by_dim: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Dimension of the complex; -1 when empty.
    pub fn dim(&self) -> isize {
        self.by_dim.len() as isize - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v as usize]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name).map(|i| i as VertexId)
    }

    /// The `d`-simplices in sorted order; empty for out-of-range `d`.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.by_dim.get(d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn num_simplices(&self) -> usize {
        self.by_dim.iter().map(|l| l.len()).sum()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    /// Position of `s` among the simplices of its dimension.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Simplices not a proper face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        // in a closed complex a non-maximal d-simplex is a facet of a (d+1)-simplex
        let covered: HashSet<Simplex> = self
            .by_dim
            .iter()
            .skip(1)
            .flatten()
            .flat_map(|s| s.boundary_faces().map(|(_, f)| f))
            .collect();
        let mut out: Vec<Simplex> = self.all_simplices().filter(|s| !covered.contains(*s)).cloned().collect();
        out.sort();
        out
    }

    /// Number of `(d+1)`-simplices having `s` as a face, for every `d`-simplex.
    pub fn coface_counts(&self, d: usize) -> HashMap<&Simplex, usize> {
        let mut counts: HashMap<&Simplex, usize> = self.simplices(d).iter().map(|s| (s, 0)).collect();
        for t in self.simplices(d + 1) {
            for (_, f) in t.boundary_faces() {
                if let Some((k, _)) = self.index.get_key_value(&f) {
                    *counts.get_mut(k).unwrap() += 1;
                }
            }
        }
        counts
    }

    pub fn display_simplex(&self, s: &Simplex) -> String {
        format!("({})", s.vertices().iter().map(|&v| self.name(v)).join(","))
    }

    /// Connected components of the 1-skeleton as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.simplices(1) {
            let (a, b) = (e.vertices()[0] as usize, e.vertices()[1] as usize);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<VertexId>> = Default::default();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v as VertexId);
        }
        groups.into_values().collect()
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = self.by_dim.iter().map(|l| l.len()).collect();
        write!(f, "SimplicialComplex {{ f-vector: {counts:?} }}")
    }
}

/// A set of simplices of some ambient complex, closed under faces.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Subcomplex {
    simplices: HashSet<Simplex>,
}

impl Subcomplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// The face closure of the generators.
    pub fn closure(generators: impl IntoIterator<Item = Simplex>) -> Self {
        let mut simplices = HashSet::new();
        for g in generators {
            if g.is_empty() || simplices.contains(&g) {
                continue;
            }
            simplices.extend(g.faces());
        }
        Subcomplex { simplices }
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.simplices.contains(&Simplex::vertex(v))
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn dim(&self) -> isize {
        self.simplices.iter().map(|s| s.dim()).max().unwrap_or(-1)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    /// Simplices in sorted order.
    pub fn sorted(&self) -> Vec<Simplex> {
        let mut v: Vec<Simplex> = self.simplices.iter().cloned().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    pub fn is_subset(&self, other: &Subcomplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex {
            simplices: self.simplices.union(&other.simplices).cloned().collect(),
        }
    }

    pub fn insert_closed(&mut self, s: &Simplex) {
        if !self.simplices.contains(s) {
            self.simplices.extend(s.faces());
        }
    }

    /// Largest dimension of a face of `s` lying in this subcomplex, or `None`
    /// if `s` is disjoint from it.
    pub fn max_face_dim(&self, s: &Simplex) -> Option<isize> {
        let inside = s.restrict(|v| self.contains_vertex(v));
        if inside.is_empty() {
            return None;
        }
        if self.contains(&inside) {
            return Some(inside.dim());
        }
        // not full along `s`: search the faces explicitly
        inside.faces().filter(|f| self.contains(f)).map(|f| f.dim()).max()
    }

    /// Every simplex of `ambient` whose vertices all lie here belongs here.
    pub fn is_full_in(&self, ambient: &SimplicialComplex) -> bool {
        ambient
            .all_simplices()
            .filter(|s| s.len() > 1)
            .all(|s| self.contains(s) || !s.vertices().iter().all(|&v| self.contains_vertex(v)))
    }

    /// Simplices of `ambient` witnessing non-fullness.
    pub fn fullness_violations<'a>(&self, ambient: &'a SimplicialComplex) -> Vec<&'a Simplex> {
        ambient
            .all_simplices()
            .filter(|s| !self.contains(s) && s.vertices().iter().all(|&v| self.contains_vertex(v)))
            .collect()
    }
}

impl fmt::Debug for Subcomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.sorted()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    #[test]
    fn closure_of_triangle() {
        let k = SimplicialComplex::from_simplices(names(3), [Simplex::new(vec![0, 1, 2])]).unwrap();
        assert_eq!(k.dim(), 2);
        assert_eq!(k.simplices(0).len(), 3);
        assert_eq!(k.simplices(1).len(), 3);
        assert_eq!(k.simplices(2).len(), 1);
        assert_eq!(k.maximal_simplices(), vec![Simplex::new(vec![0, 1, 2])]);
    }

    #[test]
    fn simplex_is_sorted_and_deduplicated() {
        assert_eq!(Simplex::new(vec![3, 1, 2, 1]).vertices(), &[1, 2, 3]);
    }

    #[test]
    fn boundary_signs_alternate() {
        let s = Simplex::new(vec![0, 1, 2]);
        let faces: Vec<(i8, Simplex)> = s.boundary_faces().collect();
        assert_eq!(
            faces,
            vec![
                (1, Simplex::new(vec![1, 2])),
                (-1, Simplex::new(vec![0, 2])),
                (1, Simplex::new(vec![0, 1]))
            ]
        );
        assert_eq!(Simplex::vertex(4).boundary_faces().count(), 0);
    }

    #[test]
    fn maximal_simplices_of_mixed_complex() {
        let k = SimplicialComplex::from_simplices(
            names(5),
            [Simplex::new(vec![0, 1, 2]), Simplex::new(vec![2, 3])],
        )
        .unwrap();
        assert_eq!(
            k.maximal_simplices(),
            vec![Simplex::new(vec![0, 1, 2]), Simplex::new(vec![2, 3]), Simplex::vertex(4)]
        );
        assert_eq!(k.components().len(), 2);
    }

    #[test]
    fn fullness() {
        let k = SimplicialComplex::from_simplices(names(3), [Simplex::new(vec![0, 1, 2])]).unwrap();
        let two_vertices = Subcomplex::closure([Simplex::vertex(0), Simplex::vertex(1)]);
        assert!(!two_vertices.is_full_in(&k));
        let edge = Subcomplex::closure([Simplex::new(vec![0, 1])]);
        assert!(edge.is_full_in(&k));
        assert_eq!(two_vertices.max_face_dim(&Simplex::new(vec![0, 1, 2])), Some(0));
        assert_eq!(edge.max_face_dim(&Simplex::new(vec![0, 1, 2])), Some(1));
        assert_eq!(edge.max_face_dim(&Simplex::vertex(2)), None);
    }

    #[test]
    fn duplicate_names_rejected() {
        let r = SimplicialComplex::from_simplices(vec!["a".into(), "a".into()], []);
        assert!(r.is_err());
    }
}
