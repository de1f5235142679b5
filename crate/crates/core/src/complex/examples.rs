//! Small named complexes used by tests, the acceptance suite and the CLI
//! corpus.

use super::{Simplex, SimplicialComplex, StratifiedComplex, Subcomplex};

/// A named example complex.
#[derive(Debug, Clone)]
pub struct Example {
    pub name: &'static str,
    pub complex: StratifiedComplex,
}

fn build(names: &[&str], tops: &[&[&str]]) -> SimplicialComplex {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let gens = tops.iter().map(|t| {
        Simplex::new(
            t.iter()
                .map(|v| names.iter().position(|n| n == v).expect("known vertex") as u32)
                .collect(),
        )
    });
    SimplicialComplex::from_simplices(names.clone(), gens).expect("example is valid")
}

fn strata(k: &SimplicialComplex, list: &[&[&str]]) -> Subcomplex {
    Subcomplex::closure(list.iter().map(|t| {
        Simplex::new(t.iter().map(|v| k.vertex_id(v).expect("known vertex")).collect())
    }))
}

pub fn point() -> StratifiedComplex {
    StratifiedComplex::manifold(build(&["p"], &[&["p"]]))
}

/// The boundary of a triangle.
pub fn circle() -> StratifiedComplex {
    StratifiedComplex::manifold(build(&["a", "b", "c"], &[&["a", "b"], &["b", "c"], &["a", "c"]]))
}

pub fn two_circles() -> StratifiedComplex {
    circle().disjoint_union(&circle(), ("1", "2")).expect("same dimension")
}

fn octahedron_names(prefix: &str) -> Vec<String> {
    ["n", "s", "e", "f", "w", "b"].iter().map(|v| format!("{prefix}{v}")).collect()
}

fn octahedron_tops(names: &[String]) -> Vec<Vec<String>> {
    let ring = [&names[2], &names[3], &names[4], &names[5]];
    let mut tops = Vec::new();
    for pole in [&names[0], &names[1]] {
        for i in 0..4 {
            tops.push(vec![pole.clone(), ring[i].clone(), ring[(i + 1) % 4].clone()]);
        }
    }
    tops
}

fn from_names(names: Vec<String>, tops: Vec<Vec<String>>) -> SimplicialComplex {
    let n: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let t: Vec<Vec<&str>> = tops.iter().map(|t| t.iter().map(|s| s.as_str()).collect()).collect();
    let t: Vec<&[&str]> = t.iter().map(|t| t.as_slice()).collect();
    build(&n, &t)
}

/// The boundary of an octahedron.
pub fn octahedron_sphere() -> StratifiedComplex {
    let names = octahedron_names("");
    let tops = octahedron_tops(&names);
    StratifiedComplex::manifold(from_names(names, tops))
}

/// The octahedron with one face removed; not a pseudomanifold.
pub fn punctured_octahedron() -> StratifiedComplex {
    let names = octahedron_names("");
    let mut tops = octahedron_tops(&names);
    tops.remove(0);
    StratifiedComplex::manifold(from_names(names, tops))
}

/// The 3x3 grid torus.
pub fn torus() -> StratifiedComplex {
    let name = |i: usize, j: usize| format!("t{}{}", i % 3, j % 3);
    let names: Vec<String> = (0..3).flat_map(|i| (0..3).map(move |j| name(i, j))).collect();
    let mut tops = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            tops.push(vec![name(i, j), name(i + 1, j), name(i + 1, j + 1)]);
            tops.push(vec![name(i, j), name(i, j + 1), name(i + 1, j + 1)]);
        }
    }
    StratifiedComplex::manifold(from_names(names, tops))
}

/// The six-vertex projective plane.
pub fn projective_plane() -> StratifiedComplex {
    let names = ["1", "2", "3", "4", "5", "6"];
    let faces: [[&str; 3]; 10] = [
        ["1", "2", "3"],
        ["1", "3", "4"],
        ["1", "4", "5"],
        ["1", "5", "6"],
        ["1", "2", "6"],
        ["2", "3", "5"],
        ["3", "4", "6"],
        ["2", "4", "5"],
        ["3", "5", "6"],
        ["2", "4", "6"],
    ];
    let tops: Vec<&[&str]> = faces.iter().map(|f| f.as_slice()).collect();
    StratifiedComplex::manifold(build(&names, &tops))
}

/// Two octahedra glued at a vertex, singular at the wedge point.
pub fn wedge_of_spheres() -> StratifiedComplex {
    let mut first = octahedron_names("x");
    first[0] = "n".into();
    let mut second = octahedron_names("y");
    second[0] = "n".into();
    let mut tops = octahedron_tops(&first);
    tops.extend(octahedron_tops(&second));
    let mut names = first;
    names.extend(second.into_iter().skip(1));
    let k = from_names(names, tops);
    let sigma = strata(&k, &[&["n"]]);
    StratifiedComplex::new(k, 2, Subcomplex::new(), vec![sigma]).expect("wedge point is a vertex")
}

/// `R x S^1` with the circle `{0} x S^1` collapsed to a point, as two open
/// disks meeting at their centres.
pub fn pinched_cylinder() -> StratifiedComplex {
    let names = ["a0", "a1", "a2", "b0", "b1", "b2", "apex"];
    let k = build(
        &names,
        &[
            &["a0", "a1", "apex"],
            &["a1", "a2", "apex"],
            &["a0", "a2", "apex"],
            &["b0", "b1", "apex"],
            &["b1", "b2", "apex"],
            &["b0", "b2", "apex"],
        ],
    );
    let ends = strata(
        &k,
        &[&["a0", "a1"], &["a1", "a2"], &["a0", "a2"], &["b0", "b1"], &["b1", "b2"], &["b0", "b2"]],
    );
    let sigma = strata(&k, &[&["apex"]]);
    StratifiedComplex::new(k, 2, ends, vec![sigma]).expect("pinched cylinder is consistent")
}

/// `R x S^1`.
pub fn cylinder() -> StratifiedComplex {
    circle().suspend()
}

pub fn open_line() -> StratifiedComplex {
    point().suspend()
}

pub fn cone_over_circle() -> StratifiedComplex {
    circle().cone().expect("compact base")
}

pub fn cone_over_two_circles() -> StratifiedComplex {
    two_circles().cone().expect("compact base")
}

pub fn cone_over_torus() -> StratifiedComplex {
    torus().cone().expect("compact base")
}

pub fn cone_over_sphere() -> StratifiedComplex {
    octahedron_sphere().cone().expect("compact base")
}

/// The boundary of the 4-simplex.
pub fn three_sphere() -> StratifiedComplex {
    let names = ["0", "1", "2", "3", "4"];
    let tops: Vec<Vec<&str>> = (0..5)
        .map(|skip| names.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, n)| *n).collect())
        .collect();
    let tops: Vec<&[&str]> = tops.iter().map(|t| t.as_slice()).collect();
    StratifiedComplex::manifold(build(&names, &tops))
}

/// The open cone on the 3-sphere with its apex as a codimension four
/// stratum.
pub fn cone_over_three_sphere() -> StratifiedComplex {
    three_sphere().cone().expect("compact base")
}

/// Every example, small enough for exhaustive invariant checks.
pub fn all_examples() -> Vec<Example> {
    vec![
        Example { name: "point", complex: point() },
        Example { name: "circle", complex: circle() },
        Example { name: "two-circles", complex: two_circles() },
        Example { name: "sphere", complex: octahedron_sphere() },
        Example { name: "torus", complex: torus() },
        Example { name: "projective-plane", complex: projective_plane() },
        Example { name: "wedge-of-spheres", complex: wedge_of_spheres() },
        Example { name: "open-line", complex: open_line() },
        Example { name: "cylinder", complex: cylinder() },
        Example { name: "pinched-cylinder", complex: pinched_cylinder() },
        Example { name: "cone-over-circle", complex: cone_over_circle() },
        Example { name: "cone-over-two-circles", complex: cone_over_two_circles() },
        Example { name: "cone-over-sphere", complex: cone_over_sphere() },
        Example { name: "cone-over-torus", complex: cone_over_torus() },
        Example { name: "suspended-cone-over-circle", complex: cone_over_circle().suspend() },
        Example { name: "suspended-pinched-cylinder", complex: pinched_cylinder().suspend() },
    ]
}
