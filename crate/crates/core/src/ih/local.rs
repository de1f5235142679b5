use std::collections::{HashMap, HashSet, VecDeque};

use super::{check_structure, fit_perversity, ih_dims};
use crate::complex::{DimTable, Simplex, StratifiedComplex, Supports, VertexId};
use crate::perversity::Perversity;
use crate::{Error, Result};

/// Top simplices sharing each `(n-1)`-face.
fn facet_cofaces(s: &StratifiedComplex) -> HashMap<Simplex, Vec<usize>> {
    let n = s.dimension();
    let mut map: HashMap<Simplex, Vec<usize>> = HashMap::new();
    for (i, t) in s.ambient().simplices(n).iter().enumerate() {
        for (_, f) in t.boundary_faces() {
            map.entry(f).or_default().push(i);
        }
    }
    map
}

/// For every singular simplex `τ` outside the ends, the top simplices
/// containing `τ` are connected through `(n-1)`-faces containing `τ`.
pub fn is_normal(s: &StratifiedComplex) -> bool {
    let n = s.dimension();
    if n == 0 {
        return true;
    }
    let tops = s.ambient().simplices(n);
    let cofaces = facet_cofaces(s);
    s.singular_set()
        .iter()
        .filter(|t| !s.ends().contains(t))
        .all(|tau| {
            let around: Vec<usize> = (0..tops.len()).filter(|&i| tau.is_face_of(&tops[i])).collect();
            let Some(&start) = around.first() else { return true };
            let mut seen: HashSet<usize> = HashSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for (_, f) in tops[i].boundary_faces() {
                    if !tau.is_face_of(&f) {
                        continue;
                    }
                    for &j in &cofaces[&f] {
                        if seen.insert(j) {
                            queue.push_back(j);
                        }
                    }
                }
            }
            seen.len() == around.len()
        })
}

/// Propagates orientations of top simplices across shared `(n-1)`-faces
/// outside the ends; fails on any inconsistency.
pub fn is_orientable(s: &StratifiedComplex) -> bool {
    let n = s.dimension();
    if n == 0 {
        return true;
    }
    let tops = s.ambient().simplices(n);
    let cofaces = facet_cofaces(s);
    let sign_in = |t: &Simplex, f: &Simplex| -> i8 {
        t.boundary_faces().find(|(_, g)| g == f).map(|(sg, _)| sg).expect("face of simplex")
    };
    let mut orient: Vec<i8> = vec![0; tops.len()];
    for root in 0..tops.len() {
        if orient[root] != 0 {
            continue;
        }
        orient[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for (si, f) in tops[i].boundary_faces() {
                if s.ends().contains(&f) {
                    continue;
                }
                for &j in &cofaces[&f] {
                    if j == i {
                        continue;
                    }
                    // induced orientations on the shared face must cancel
                    let want = -orient[i] * si * sign_in(&tops[j], &f);
                    if orient[j] == 0 {
                        orient[j] = want;
                        queue.push_back(j);
                    } else if orient[j] != want {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Stalk dimensions of the intersection homology sheaf at a vertex.
///
/// For `x` of codimension `k` in an `n`-dimensional space the entry in
/// degree `-n + j` is `dim I_pH_{n-1-j}` of the simplicial link of `x`,
/// for `0 <= j <= p(k)`; a point of the open stratum has only `j = 0`.
/// The simplicial link is the `(n-1)`-dimensional join of a sphere with the
/// normal link, which is why its degrees are offset from `k - 1`.
pub fn local_stalk_table(s: &StratifiedComplex, x: VertexId, p: &Perversity) -> Result<DimTable> {
    if x as usize >= s.ambient().num_vertices() {
        return Err(Error::NotInComplex(format!("vertex {x}")));
    }
    if s.ends().contains_vertex(x) {
        return Err(Error::Precondition(format!(
            "vertex '{}' lies in the ends",
            s.ambient().name(x)
        )));
    }
    check_structure(s)?;
    let p = fit_perversity(s, p)?;
    let n = s.dimension() as i64;
    let k = s.depth(x);
    let top_j = match (&p, k) {
        (Some(p), k) if k >= 2 => p.value(k) as i64,
        _ => 0,
    };
    let link = s.link(x);
    let link_ih = match &p {
        Some(p) => ih_dims(&link, p, Supports::BorelMoore)?,
        None => crate::complex::homology_dims(&link, Supports::BorelMoore)?,
    };
    Ok((0..=top_j)
        .map(|j| (-n + j, link_ih.get(&(n - 1 - j)).copied().unwrap_or(0)))
        .collect())
}

/// Splits every singular vertex into one copy per connected component of
/// its link. Copies are named `x.1`, `x.2`, ... and stay in the filtration.
pub fn normalize_isolated(s: &StratifiedComplex) -> Result<StratifiedComplex> {
    if s.singular_set().dim() > 0 {
        return Err(Error::Unsupported(
            "normalization handles isolated singular vertices only".into(),
        ));
    }
    let report = s.validate();
    if !report.structurally_valid() {
        return Err(Error::Validation(format!("invalid complex:\n{report}")));
    }
    let k = s.ambient();
    let taken: HashSet<&str> = k.names().iter().map(|n| n.as_str()).collect();

    // old vertex -> list of new ids, with the component of each old neighbour
    let mut names: Vec<String> = Vec::new();
    let mut plain: HashMap<VertexId, VertexId> = HashMap::new();
    let mut split: HashMap<VertexId, (Vec<VertexId>, HashMap<VertexId, usize>)> = HashMap::new();
    for v in 0..k.num_vertices() as VertexId {
        let singular = s.singular_set().contains_vertex(v) && !s.ends().contains_vertex(v);
        let components = if singular { s.link(v).ambient().components() } else { Vec::new() };
        if components.len() < 2 {
            plain.insert(v, names.len() as VertexId);
            names.push(k.name(v).to_string());
            continue;
        }
        let link = s.link(v);
        let mut side = HashMap::new();
        let mut copies = Vec::new();
        for (c, comp) in components.iter().enumerate() {
            for &w in comp {
                side.insert(s.vertex(link.ambient().name(w))?, c);
            }
            let mut name = format!("{}.{}", k.name(v), c + 1);
            while taken.contains(name.as_str()) {
                name.push('\'');
            }
            copies.push(names.len() as VertexId);
            names.push(name);
        }
        split.insert(v, (copies, side));
    }

    let remap = |t: &Simplex| -> Simplex {
        Simplex::new(
            t.vertices()
                .iter()
                .map(|&v| match split.get(&v) {
                    Some((copies, side)) => {
                        let other = t.vertices().iter().find(|&&w| w != v).expect("tops have dimension at least 1");
                        copies[side[other]]
                    }
                    None => plain[&v],
                })
                .collect(),
        )
    };
    let tops: Vec<Simplex> = k.maximal_simplices().iter().map(remap).collect();
    let ends: Vec<Simplex> = s.ends().iter().map(remap).collect();
    let filtration = (2..=s.dimension())
        .map(|c| {
            s.stratum_closure(c)
                .iter()
                .flat_map(|t| {
                    let v = t.vertices()[0];
                    match split.get(&v) {
                        Some((copies, _)) => copies.iter().map(|&c| Simplex::vertex(c)).collect(),
                        None => vec![Simplex::vertex(plain[&v])],
                    }
                })
                .collect()
        })
        .collect();
    StratifiedComplex::rebuild(names, s.dimension(), tops, ends, filtration)
}
