use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;

use super::simplicial::{Simplex, SimplicialComplex, Subcomplex, VertexId};
use crate::{Error, Result};

/// A finite simplicial model of a stratified pseudomanifold
/// `X = |K| \ |L|`.
///
/// `filtration[k - 2]` holds `F(k)`, the closed subcomplex modelling `X_k`,
/// for `k = 2..=dimension`. `ends` is the subcomplex `L` removed at
/// infinity.
#[derive(Clone)]
pub struct StratifiedComplex {
    ambient: SimplicialComplex,
    dimension: usize,
    ends: Subcomplex,
    filtration: Vec<Subcomplex>,
}

impl StratifiedComplex {
    /// Assembles a stratified complex. Missing trailing filtration levels
    /// are empty. Every listed simplex must belong to the ambient complex;
    /// the remaining structural conditions are reported by [`validate`].
    ///
    /// [`validate`]: StratifiedComplex::validate
    pub fn new(
        ambient: SimplicialComplex,
        dimension: usize,
        ends: Subcomplex,
        mut filtration: Vec<Subcomplex>,
    ) -> Result<Self> {
        let levels = dimension.saturating_sub(1);
        if filtration.len() > levels {
            if filtration[levels..].iter().any(|f| !f.is_empty()) {
                return Err(Error::InvalidDimension(format!(
                    "filtration has {} levels but a dimension-{dimension} complex allows codimensions 2..={dimension}",
                    filtration.len()
                )));
            }
            filtration.truncate(levels);
        }
        filtration.resize(levels, Subcomplex::new());
        for s in ends.iter().chain(filtration.iter().flat_map(|f| f.iter())) {
            if !ambient.contains(s) {
                return Err(Error::NotInComplex(format!("{s:?}")));
            }
        }
        Ok(StratifiedComplex {
            ambient,
            dimension,
            ends,
            filtration,
        })
    }

    /// A compact complex with no singular strata.
    pub fn manifold(ambient: SimplicialComplex) -> Self {
        let dimension = ambient.dim().max(0) as usize;
        Self::new(ambient, dimension, Subcomplex::new(), Vec::new()).expect("empty data is valid")
    }

    pub fn ambient(&self) -> &SimplicialComplex {
        &self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn ends(&self) -> &Subcomplex {
        &self.ends
    }

    /// `F(k)` for `k >= 2`; empty beyond the dimension.
    pub fn stratum_closure(&self, k: usize) -> &Subcomplex {
        static EMPTY: std::sync::OnceLock<Subcomplex> = std::sync::OnceLock::new();
        assert!(k >= 2, "filtration is indexed from codimension 2");
        self.filtration
            .get(k - 2)
            .unwrap_or_else(|| EMPTY.get_or_init(Subcomplex::new))
    }

    pub fn filtration(&self) -> &[Subcomplex] {
        &self.filtration
    }

    /// The singular set `Σ = F(2)`.
    pub fn singular_set(&self) -> &Subcomplex {
        self.stratum_closure(2)
    }

    /// Largest `k` with `v` in `F(k)`, or 0 for points of the open stratum.
    pub fn depth(&self, v: VertexId) -> usize {
        (2..=self.dimension)
            .rev()
            .find(|&k| self.stratum_closure(k).contains_vertex(v))
            .unwrap_or(0)
    }

    /// True if the stratum `S_k = F(k) \ F(k+1)` is non-empty.
    pub fn has_stratum(&self, k: usize) -> bool {
        if k < 2 || k > self.dimension {
            return false;
        }
        let fk = self.stratum_closure(k);
        let next = self.stratum_closure(k + 1);
        fk.iter().any(|s| !next.contains(s))
    }

    /// True if every non-empty singular stratum has even codimension.
    pub fn has_only_even_codimension_strata(&self) -> bool {
        (2..=self.dimension).all(|k| k % 2 == 0 || !self.has_stratum(k))
    }

    pub fn is_compact(&self) -> bool {
        self.ends.is_empty()
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.ambient
            .vertex_id(name)
            .ok_or_else(|| Error::NotInComplex(format!("vertex '{name}'")))
    }

    /// The subcomplex of simplices disjoint from the ends.
    pub fn interior_core(&self) -> Subcomplex {
        Subcomplex::closure(
            self.ambient
                .all_simplices()
                .filter(|s| s.vertices().iter().all(|&v| !self.ends.contains_vertex(v)))
                .cloned(),
        )
    }

    /// Checks that the straight-line retraction of `|K| \ |L|` onto the
    /// interior core preserves strata: for every simplex outside `L`, if
    /// its core face lies in `F(k)` then so does the simplex. Returns the
    /// offending simplices.
    pub fn ends_compatibility_violations(&self) -> Vec<Simplex> {
        let mut bad = Vec::new();
        for s in self.ambient.all_simplices() {
            if self.ends.contains(s) {
                continue;
            }
            let core = s.restrict(|v| !self.ends.contains_vertex(v));
            if core.is_empty() {
                // only possible when L is not full
                continue;
            }
            if self.filtration.iter().any(|f| f.contains(&core) && !f.contains(s)) {
                bad.push(s.clone());
            }
        }
        bad
    }

    /// True if the triangulation is fine enough for simplicial intersection
    /// homology: every `F(k)` is full and the ends are compatible with the
    /// strata. One barycentric subdivision of a valid complex achieves both.
    pub fn is_fine_enough(&self) -> bool {
        (2..=self.dimension).all(|k| self.stratum_closure(k).is_full_in(&self.ambient))
            && self.ends_compatibility_violations().is_empty()
    }

    /// Full validation report; see [`ValidationReport`] for the checks.
    pub fn validate(&self) -> ValidationReport {
        let k = &self.ambient;
        let n = self.dimension;
        let mut checks = Vec::new();

        // purity
        let mut detail = String::new();
        let mut pass = k.dim() == n as isize;
        if !pass {
            detail = format!("complex has dimension {}, expected {n}", k.dim());
        } else {
            if let Some(s) = k.maximal_simplices().iter().find(|s| s.dim() < n as isize) {
                pass = false;
                detail = format!("{} is not a face of an {n}-simplex", k.display_simplex(s));
            }
        }
        checks.push(Check::new(CheckKind::Purity, pass, detail));

        // pseudomanifold
        let mut pass = true;
        let mut detail = String::new();
        if n >= 1 {
            let counts = k.coface_counts(n - 1);
            for s in k.simplices(n - 1) {
                if self.ends.contains(s) {
                    continue;
                }
                let c = counts[s];
                if c != 2 {
                    pass = false;
                    detail = format!("{} is a face of {c} top simplices", k.display_simplex(s));
                    break;
                }
            }
        }
        checks.push(Check::new(CheckKind::Pseudomanifold, pass, detail));

        // nesting and codimension bounds
        let mut pass = true;
        let mut detail = String::new();
        for kk in 2..=n {
            let f = self.stratum_closure(kk);
            if f.dim() > n as isize - kk as isize {
                pass = false;
                detail = format!("F({kk}) has dimension {} > {}", f.dim(), n - kk);
                break;
            }
            if kk > 2 && !f.is_subset(self.stratum_closure(kk - 1)) {
                pass = false;
                detail = format!("F({kk}) is not contained in F({})", kk - 1);
                break;
            }
        }
        checks.push(Check::new(CheckKind::FiltrationNesting, pass, detail));

        // no codimension-one stratum
        let sigma = self.singular_set();
        let bad = n >= 1 && sigma.iter().any(|s| s.dim() >= n as isize - 1);
        checks.push(Check::new(
            CheckKind::NoCodimensionOne,
            !bad,
            if bad {
                "F(2) contains an (n-1)-simplex".into()
            } else {
                String::new()
            },
        ));

        // ends full
        let violations = self.ends.fullness_violations(k);
        checks.push(Check::new(
            CheckKind::EndsFull,
            violations.is_empty(),
            violations
                .first()
                .map(|s| format!("{} has all vertices in the ends", k.display_simplex(s)))
                .unwrap_or_default(),
        ));

        // strata full
        let mut detail = String::new();
        for kk in 2..=n {
            if let Some(s) = self.stratum_closure(kk).fullness_violations(k).first() {
                detail = format!("F({kk}) is not full: {} has all vertices in F({kk})", k.display_simplex(s));
                break;
            }
        }
        checks.push(Check::new(CheckKind::StrataFull, detail.is_empty(), detail));

        ValidationReport { checks }
    }

    /// Barycentric subdivision. Vertices of the result are the simplices of
    /// `K`; a vertex `{v}` keeps the name of `v`.
    pub fn barycentric_subdivide(&self) -> StratifiedComplex {
        let k = &self.ambient;
        let mut names = Vec::with_capacity(k.num_simplices());
        let mut id_of: HashMap<Simplex, VertexId> = HashMap::new();
        for s in k.all_simplices() {
            id_of.insert(s.clone(), names.len() as VertexId);
            names.push(if s.len() == 1 {
                k.name(s.vertices()[0]).to_string()
            } else {
                format!("[{}]", s.vertices().iter().map(|&v| k.name(v)).join(","))
            });
        }
        let flags_of = |s: &Simplex| -> Vec<Simplex> {
            s.vertices()
                .iter()
                .copied()
                .permutations(s.len())
                .map(|perm| {
                    let mut ids = Vec::with_capacity(perm.len());
                    for i in 1..=perm.len() {
                        ids.push(id_of[&Simplex::new(perm[..i].to_vec())]);
                    }
                    Simplex::new(ids)
                })
                .collect()
        };
        let tops = k.maximal_simplices();
        let ambient = SimplicialComplex::from_simplices(names, tops.iter().flat_map(flags_of))
            .expect("subdivision of a valid complex is valid");

        // a chain of faces lies in sd(S) iff its largest member lies in S
        let largest: Vec<&Simplex> = k.all_simplices().collect();
        let subdivide = |sub: &Subcomplex| -> Subcomplex {
            Subcomplex::closure(
                ambient
                    .all_simplices()
                    .filter(|c| {
                        let top = c.vertices().iter().map(|&v| largest[v as usize]).max_by_key(|s| s.len()).unwrap();
                        sub.contains(top)
                    })
                    .cloned(),
            )
        };
        let ends = subdivide(&self.ends);
        let filtration = self.filtration.iter().map(subdivide).collect();
        StratifiedComplex::new(ambient, self.dimension, ends, filtration).expect("subdivided data is consistent")
    }

    /// The closed cone with apex `v` over a compact base of dimension
    /// `k - 1`. The base becomes the ends, so the result models the open
    /// cone, and the apex is the stratum of codimension `k`.
    pub fn cone(&self) -> Result<StratifiedComplex> {
        if !self.ends.is_empty() {
            return Err(Error::Unsupported("cone requires a base with empty ends".into()));
        }
        let base = &self.ambient;
        let mut names = base.names().to_vec();
        let apex_name = fresh_name(&names, "apex");
        let apex = names.len() as VertexId;
        names.push(apex_name);
        let gens = base
            .maximal_simplices()
            .into_iter()
            .map(|s| s.with_vertex(apex))
            .chain(std::iter::once(Simplex::vertex(apex)));
        let ambient = SimplicialComplex::from_simplices(names, gens)?;
        let k = self.dimension + 1;
        let cone_of = |sub: &Subcomplex| -> Subcomplex {
            Subcomplex::closure(
                sub.iter()
                    .map(|s| s.with_vertex(apex))
                    .chain(std::iter::once(Simplex::vertex(apex))),
            )
        };
        let mut filtration: Vec<Subcomplex> = (2..k).map(|j| cone_of(self.stratum_closure(j))).collect();
        if k >= 2 {
            filtration.push(Subcomplex::closure([Simplex::vertex(apex)]));
        }
        let ends = Subcomplex::closure(base.all_simplices().cloned());
        StratifiedComplex::new(ambient, k, ends, filtration)
    }

    /// Prism model of `R x X`: `K x [0, 2]` with the interval subdivided at 1,
    /// levels 0 and 2 at infinity together with `L x [0, 2]`.
    ///
    /// Each half is triangulated by the staircase construction with vertices
    /// ordered ends first, then deepest stratum first, then by id; the upper half
    /// mirrors the lower one about level 1. With this order a full, ends
    /// compatible input gives a full, ends compatible output.
    pub fn suspend(&self) -> StratifiedComplex {
        let k = &self.ambient;
        let nv = k.num_vertices() as VertexId;
        let mut names = Vec::with_capacity(3 * nv as usize);
        for level in 0..3 {
            for v in 0..nv {
                names.push(format!("{}@{level}", k.name(v)));
            }
        }
        let at = |v: VertexId, level: u32| v + level * nv;
        let key = |v: VertexId| {
            (
                !self.ends.contains_vertex(v),
                std::cmp::Reverse(self.depth(v)),
                v,
            )
        };
        let prism = |s: &Simplex| -> Vec<Simplex> {
            let mut vs = s.vertices().to_vec();
            vs.sort_by_key(|&v| key(v));
            let mut out = Vec::new();
            for outer in [0u32, 2u32] {
                for j in 0..vs.len() {
                    let mut cell: Vec<VertexId> = vs[..=j].iter().map(|&v| at(v, outer)).collect();
                    cell.extend(vs[j..].iter().map(|&v| at(v, 1)));
                    out.push(Simplex::new(cell));
                }
            }
            out
        };
        let ambient = SimplicialComplex::from_simplices(names, k.maximal_simplices().iter().flat_map(prism))
            .expect("prism of a valid complex is valid");
        let prism_of = |sub: &Subcomplex| -> Subcomplex {
            Subcomplex::closure(sub.iter().flat_map(prism))
        };
        let mut ends = prism_of(&self.ends);
        for s in k.all_simplices() {
            for level in [0, 2] {
                ends.insert_closed(&Simplex::new(s.vertices().iter().map(|&v| at(v, level)).collect()));
            }
        }
        let filtration = (2..=self.dimension).map(|i| prism_of(self.stratum_closure(i))).collect();
        StratifiedComplex::new(ambient, self.dimension + 1, ends, filtration).expect("prism data is consistent")
    }

    /// Simplicial link of a vertex as a compact stratified complex of
    /// dimension `n - 1`. A link simplex `ρ` lies in `F(k)` when the open
    /// simplex `ρ * x` does, so the link sees exactly the strata meeting
    /// the open star of `x`.
    pub fn link(&self, x: VertexId) -> StratifiedComplex {
        let (ambient, map) = self.sub_complex_from(
            self.ambient
                .all_simplices()
                .filter(|s| s.contains_vertex(x))
                .map(|s| s.without_vertex(x))
                .filter(|s| !s.is_empty()),
        );
        let n = self.dimension.saturating_sub(1);
        let filtration = (2..=n)
            .map(|k| {
                Subcomplex::closure(
                    self.stratum_closure(k)
                        .iter()
                        .filter(|s| s.contains_vertex(x) && s.len() > 1)
                        .filter_map(|s| map_simplex(&s.without_vertex(x), &map)),
                )
            })
            .collect();
        StratifiedComplex::new(ambient, n, Subcomplex::new(), filtration).expect("link data is consistent")
    }

    /// The closed star of a vertex with its link as ends, modelling the open
    /// star.
    pub fn open_star(&self, x: VertexId) -> StratifiedComplex {
        let (ambient, map) = self.sub_complex_from(
            self.ambient
                .all_simplices()
                .filter(|s| s.contains_vertex(x))
                .cloned(),
        );
        let restrict = |sub: &Subcomplex| {
            Subcomplex::closure(
                sub.iter()
                    .filter_map(|s| map_simplex(s, &map))
                    .filter(|s| ambient.contains(s)),
            )
        };
        let x_new = map[&x];
        let ends = Subcomplex::closure(
            ambient
                .all_simplices()
                .filter(|s| !s.contains_vertex(x_new))
                .cloned(),
        );
        let filtration = self.filtration.iter().map(restrict).collect();
        StratifiedComplex::new(ambient, self.dimension, ends, filtration).expect("star data is consistent")
    }

    /// Builds a complex from simplices of `K`, renumbering the vertices that
    /// occur. Returns the old-to-new vertex map.
    fn sub_complex_from(&self, simplices: impl Iterator<Item = Simplex>) -> (SimplicialComplex, HashMap<VertexId, VertexId>) {
        let simplices: Vec<Simplex> = simplices.collect();
        let used: std::collections::BTreeSet<VertexId> =
            simplices.iter().flat_map(|s| s.vertices().iter().copied()).collect();
        let map: HashMap<VertexId, VertexId> = used.iter().enumerate().map(|(i, &v)| (v, i as VertexId)).collect();
        let names = used.iter().map(|&v| self.ambient.name(v).to_string()).collect();
        let gens = simplices.iter().filter_map(|s| map_simplex(s, &map));
        (SimplicialComplex::from_simplices(names, gens).expect("sub-complex is valid"), map)
    }

    /// Replaces the vertex data wholesale; used by normalization.
    pub(crate) fn rebuild(
        names: Vec<String>,
        dimension: usize,
        tops: Vec<Simplex>,
        ends: Vec<Simplex>,
        filtration: Vec<Vec<Simplex>>,
    ) -> Result<StratifiedComplex> {
        let ambient = SimplicialComplex::from_simplices(names, tops)?;
        let filtration = filtration.into_iter().map(Subcomplex::closure).collect();
        StratifiedComplex::new(ambient, dimension, Subcomplex::closure(ends), filtration)
    }

    /// Disjoint union, with vertex names prefixed to keep them distinct.
    pub fn disjoint_union(&self, other: &StratifiedComplex, prefixes: (&str, &str)) -> Result<StratifiedComplex> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch(format!(
                "cannot join dimensions {} and {}",
                self.dimension, other.dimension
            )));
        }
        let shift = self.ambient.num_vertices() as VertexId;
        let mut names: Vec<String> = self.ambient.names().iter().map(|n| format!("{}{n}", prefixes.0)).collect();
        names.extend(other.ambient.names().iter().map(|n| format!("{}{n}", prefixes.1)));
        let moved = |s: &Simplex| Simplex::new(s.vertices().iter().map(|&v| v + shift).collect());
        let tops = self
            .ambient
            .maximal_simplices()
            .into_iter()
            .chain(other.ambient.maximal_simplices().iter().map(moved))
            .collect();
        let ends = self.ends.iter().cloned().chain(other.ends.iter().map(moved)).collect();
        let filtration = (2..=self.dimension)
            .map(|k| {
                self.stratum_closure(k)
                    .iter()
                    .cloned()
                    .chain(other.stratum_closure(k).iter().map(moved))
                    .collect()
            })
            .collect();
        Self::rebuild(names, self.dimension, tops, ends, filtration)
    }

    pub fn display_simplex(&self, s: &Simplex) -> String {
        self.ambient.display_simplex(s)
    }
}

fn map_simplex(s: &Simplex, map: &HashMap<VertexId, VertexId>) -> Option<Simplex> {
    s.vertices()
        .iter()
        .map(|v| map.get(v).copied())
        .collect::<Option<Vec<_>>>()
        .map(Simplex::new)
}

fn fresh_name(names: &[String], base: &str) -> String {
    let taken: HashSet<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut candidate = base.to_string();
    while taken.contains(candidate.as_str()) {
        candidate.push('\'');
    }
    candidate
}

impl fmt::Debug for StratifiedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strata: BTreeMap<usize, usize> = (2..=self.dimension)
            .map(|k| (k, self.stratum_closure(k).len()))
            .collect();
        f.debug_struct("StratifiedComplex")
            .field("dimension", &self.dimension)
            .field("ambient", &self.ambient)
            .field("ends", &self.ends.len())
            .field("filtration_sizes", &strata)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    /// Every simplex is a face of an n-simplex.
    Purity,
    /// Every (n-1)-simplex outside the ends has exactly two cofaces.
    Pseudomanifold,
    /// `F(k)` nested with `dim F(k) <= n - k`.
    FiltrationNesting,
    /// No stratum of codimension one.
    NoCodimensionOne,
    /// The ends form a full subcomplex.
    EndsFull,
    /// Every `F(k)` is a full subcomplex.
    StrataFull,
}

impl CheckKind {
    pub fn label(self) -> &'static str {
        match self {
            CheckKind::Purity => "purity",
            CheckKind::Pseudomanifold => "pseudomanifold",
            CheckKind::FiltrationNesting => "filtration-nesting",
            CheckKind::NoCodimensionOne => "no-codimension-one",
            CheckKind::EndsFull => "ends-full",
            CheckKind::StrataFull => "strata-full",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(kind: CheckKind, passed: bool, detail: String) -> Self {
        Check { kind, passed, detail }
    }
}

/// Pass/fail per structural check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self, kind: CheckKind) -> bool {
        self.checks.iter().any(|c| c.kind == kind && c.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// All checks except strata fullness: enough for ordinary homology.
    pub fn structurally_valid(&self) -> bool {
        use CheckKind::*;
        [Purity, Pseudomanifold, FiltrationNesting, NoCodimensionOne, EndsFull]
            .into_iter()
            .all(|k| self.passed(k))
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{:<20} {}", c.kind.label(), if c.passed { "ok" } else { "FAIL" })?;
            if !c.detail.is_empty() {
                write!(f, "  {}", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
