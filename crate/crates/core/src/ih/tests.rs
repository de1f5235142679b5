use super::*;
use crate::complex::{boundary, examples, homology_dims, VertexId};
use crate::linalg::rank_of_vectors;
use crate::perversity::StandardKind;

fn table(v: &[usize]) -> DimTable {
    v.iter().enumerate().map(|(i, &d)| (i as i64, d)).collect()
}

fn fine(s: &StratifiedComplex) -> StratifiedComplex {
    fine_enough(s.clone(), true).unwrap()
}

/// The distinct standard perversities in dimension `n`.
fn all_perversities(n: usize) -> Vec<Perversity> {
    let mut out: Vec<Perversity> = Vec::new();
    for k in [StandardKind::Zero, StandardKind::LowerMiddle, StandardKind::UpperMiddle, StandardKind::Top] {
        let p = Perversity::standard(k, n.max(2)).unwrap();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Contact dimension of a chain with `F(k)` inside the space, computed from
/// vertex sets, valid for full `F(k)`.
fn contact_dim(s: &StratifiedComplex, c: &Chain, k: usize) -> Option<i64> {
    c.support()
        .filter_map(|t| {
            let w: Vec<_> = t
                .vertices()
                .iter()
                .filter(|&&v| s.stratum_closure(k).contains_vertex(v))
                .collect();
            let inside = w.iter().any(|&&v| !s.ends().contains_vertex(v));
            inside.then_some(w.len() as i64 - 1)
        })
        .max()
}

fn satisfies_support_condition(s: &StratifiedComplex, p: &Perversity, c: &Chain) -> bool {
    let i = c.degree() as i64;
    (2..=s.dimension()).all(|k| contact_dim(s, c, k).is_none_or(|d| d <= i - k as i64 + p.value(k) as i64))
}

#[test]
fn cone_over_circle_allowable_vertices_and_triangles() {
    let c = examples::cone_over_circle().barycentric_subdivide();
    let z = Perversity::zero(2).unwrap();
    let apex = c.vertex("apex").unwrap();
    let vertices = allowable_simplices(&c, &z, 0, Supports::BorelMoore).unwrap();
    let expected: Vec<Simplex> = ChainModel::new(&c, Supports::BorelMoore)
        .simplices(0)
        .iter()
        .filter(|t| !t.contains_vertex(apex))
        .cloned()
        .collect();
    assert!(!expected.is_empty());
    assert_eq!(vertices, expected);
    let triangles = allowable_simplices(&c, &z, 2, Supports::BorelMoore).unwrap();
    assert_eq!(triangles.len(), c.ambient().simplices(2).len());
}

#[test]
fn manifold_everything_allowable() {
    for ex in examples::all_examples().into_iter().filter(|e| e.complex.singular_set().is_empty()) {
        for p in all_perversities(ex.complex.dimension()) {
            for i in 0..=ex.complex.dimension() {
                for supports in [Supports::BorelMoore, Supports::Compact] {
                    let all = ChainModel::new(&ex.complex, supports).simplices(i).to_vec();
                    assert_eq!(allowable_simplices(&ex.complex, &p, i, supports).unwrap(), all);
                }
            }
        }
    }
}

#[test]
fn manifold_allowable_complex_is_full_chain_complex() {
    let t = examples::torus();
    let ac = allowable_complex(&t, &Perversity::zero(2).unwrap(), Supports::BorelMoore).unwrap();
    for i in 0..=2 {
        assert_eq!(ac.rank(i), t.ambient().simplices(i).len());
    }
}

#[test]
fn pinched_cylinder_degree_one_avoids_apex() {
    let y = examples::pinched_cylinder();
    let apex = y.vertex("apex").unwrap();
    let ac = allowable_complex(&y, &Perversity::zero(2).unwrap(), Supports::BorelMoore).unwrap();
    let allowed = allowable_simplices(&y, &Perversity::zero(2).unwrap(), 1, Supports::BorelMoore).unwrap();
    for chain in ac.basis(1) {
        for t in chain.support() {
            assert!(!t.contains_vertex(apex));
            assert!(allowed.contains(t));
        }
    }
}

#[test]
fn basis_chains_are_allowable_and_boundaries_compose_to_zero() {
    for ex in examples::all_examples() {
        let s = fine(&ex.complex);
        if s.ambient().num_simplices() > 3000 {
            continue;
        }
        for p in all_perversities(s.dimension()) {
            for supports in [Supports::BorelMoore, Supports::Compact] {
                let ac = allowable_complex(&s, &p, supports).unwrap();
                for i in 0..=s.dimension() {
                    for c in ac.basis(i) {
                        assert!(satisfies_support_condition(&s, &p, &c), "{} {p}", ex.name);
                        if i > 0 {
                            let d = boundary(&c, &s).unwrap();
                            assert!(satisfies_support_condition(&s, &p, &d), "{} {p}: boundary", ex.name);
                        }
                    }
                    if i >= 2 {
                        assert!(ac.boundary_matrix(i - 1).mul(ac.boundary_matrix(i)).is_zero(), "{}", ex.name);
                    }
                }
            }
        }
    }
}

#[test]
fn pinched_cylinder_table() {
    let y = examples::pinched_cylinder();
    let m = Perversity::middle(2).unwrap();
    assert_eq!(ih_dims(&y, &m, Supports::BorelMoore).unwrap(), table(&[0, 0, 2]));
    assert_eq!(ih_dims(&y, &m, Supports::Compact).unwrap(), table(&[2, 0, 0]));
}

#[test]
fn coarse_triangulation_refused_without_auto_subdivide() {
    let y = examples::pinched_cylinder();
    let options = IhOptions {
        auto_subdivide: false,
        extra_subdivisions: 0,
    };
    let m = Perversity::middle(2).unwrap();
    assert!(matches!(
        ih_dims_with(&y, &m, Supports::Compact, &options),
        Err(Error::Precondition(_))
    ));
    let options = IhOptions {
        auto_subdivide: false,
        extra_subdivisions: 1,
    };
    assert_eq!(ih_dims_with(&y, &m, Supports::Compact, &options).unwrap(), table(&[2, 0, 0]));
}

#[test]
fn perversity_dimension_checked() {
    let c = examples::cone_over_torus();
    assert!(matches!(
        ih_dims(&c, &Perversity::zero(2).unwrap(), Supports::BorelMoore),
        Err(Error::DimensionMismatch(_))
    ));
    assert!(ih_dims(&c, &Perversity::zero(5).unwrap(), Supports::BorelMoore).is_ok());
}

#[test]
fn manifolds_match_ordinary_homology() {
    for ex in examples::all_examples().into_iter().filter(|e| e.complex.singular_set().is_empty()) {
        for supports in [Supports::BorelMoore, Supports::Compact] {
            let h = homology_dims(&ex.complex, supports).unwrap();
            for p in all_perversities(ex.complex.dimension()) {
                assert_eq!(ih_dims(&ex.complex, &p, supports).unwrap(), h, "{} {p} {supports}", ex.name);
            }
        }
    }
}

#[test]
fn subdivision_invariance() {
    let extra = IhOptions {
        auto_subdivide: true,
        extra_subdivisions: 1,
    };
    for s in [
        examples::pinched_cylinder(),
        examples::cone_over_circle(),
        examples::cone_over_two_circles(),
        examples::wedge_of_spheres(),
    ] {
        for p in all_perversities(2) {
            for supports in [Supports::BorelMoore, Supports::Compact] {
                assert_eq!(ih_dims(&s, &p, supports).unwrap(), ih_dims_with(&s, &p, supports, &extra).unwrap());
            }
        }
    }
}

#[test]
fn monotone_in_perversity() {
    let s = fine(&examples::cone_over_torus());
    let z = allowable_complex(&s, &Perversity::zero(3).unwrap(), Supports::BorelMoore).unwrap();
    let t = allowable_complex(&s, &Perversity::top(3).unwrap(), Supports::BorelMoore).unwrap();
    for i in 0..=3 {
        let big = t.basis_vectors(i).to_vec();
        let mut both = big.clone();
        both.extend(z.basis_vectors(i).iter().cloned());
        assert_eq!(rank_of_vectors(&both), rank_of_vectors(&big), "degree {i}");
        assert!(z.rank(i) <= t.rank(i));
    }
}

#[test]
fn empty_strata_values_do_not_matter() {
    // F(3) = F(2) = F(4): the codimension three stratum is empty
    let c = examples::cone_over_three_sphere();
    let a = Perversity::custom(&[0, 0, 1]).unwrap();
    let b = Perversity::custom(&[0, 1, 1]).unwrap();
    for supports in [Supports::BorelMoore, Supports::Compact] {
        assert_eq!(ih_dims(&c, &a, supports).unwrap(), ih_dims(&c, &b, supports).unwrap());
    }
    // F(3) empty
    let s = examples::pinched_cylinder().suspend();
    let a = Perversity::custom(&[0, 0]).unwrap();
    let b = Perversity::custom(&[0, 1]).unwrap();
    for supports in [Supports::BorelMoore, Supports::Compact] {
        assert_eq!(ih_dims(&s, &a, supports).unwrap(), ih_dims(&s, &b, supports).unwrap());
    }
}

#[test]
fn top_perversity_reduces_to_codimension_two() {
    let s = fine(&examples::pinched_cylinder().suspend());
    let t = Perversity::top(3).unwrap();
    for supports in [Supports::BorelMoore, Supports::Compact] {
        let model = ChainModel::new(&s, supports);
        for i in 0..=3 {
            let only_k2: Vec<Simplex> = model
                .simplices(i)
                .iter()
                .filter(|t| {
                    let c = Chain::simplex((*t).clone());
                    contact_dim(&s, &c, 2).is_none_or(|d| d <= i as i64 - 2)
                })
                .cloned()
                .collect();
            assert_eq!(allowable_simplices(&s, &t, i, supports).unwrap(), only_k2);
        }
    }
}

#[test]
fn cone_formula_examples() {
    let z = Perversity::zero(2).unwrap();
    let r = cone_formula_check(&examples::circle(), &z).unwrap();
    assert_eq!(r.comparison.right, table(&[0, 0, 1]));
    assert!(r.agrees(), "{}", r.comparison);
    let r = cone_formula_check(&examples::two_circles(), &z).unwrap();
    assert_eq!(r.comparison.right, table(&[0, 0, 2]));
    assert!(r.agrees());
    let t = Perversity::top(4).unwrap();
    let r = cone_formula_check(&examples::circle(), &t).unwrap();
    assert_eq!(r.comparison.left, table(&[0, 0, 1]));
    for p in all_perversities(3) {
        let r = cone_formula_check(&examples::torus(), &p).unwrap();
        assert!(r.agrees(), "{p}\n{}", r.comparison);
    }
    assert!(cone_formula_check(&examples::pinched_cylinder(), &z).is_err());
}

#[test]
fn suspension_examples() {
    let z = Perversity::zero(2).unwrap();
    let r = suspension_check(&examples::point(), &z).unwrap();
    assert_eq!(r.comparison.right, table(&[0, 1]));
    assert!(r.agrees());
    let r = suspension_check(&examples::circle(), &z).unwrap();
    assert_eq!(r.comparison.right, table(&[0, 1, 1]));
    let m = Perversity::middle(3).unwrap();
    let r = suspension_check(&examples::pinched_cylinder(), &m).unwrap();
    assert_eq!(r.comparison.right, table(&[0, 0, 0, 2]));
    assert!(r.agrees());
    assert!(suspension_check(&examples::pinched_cylinder(), &z).is_err());
}

#[test]
fn stalk_examples() {
    let z = Perversity::zero(2).unwrap();
    let c = examples::cone_over_circle();
    let stalk = local_stalk_table(&c, c.vertex("apex").unwrap(), &z).unwrap();
    assert_eq!(stalk, DimTable::from([(-2, 1)]));
    let c = examples::cone_over_two_circles();
    let stalk = local_stalk_table(&c, c.vertex("apex").unwrap(), &z).unwrap();
    assert_eq!(stalk, DimTable::from([(-2, 2)]));
    let s = examples::octahedron_sphere();
    assert_eq!(local_stalk_table(&s, 0, &z).unwrap(), DimTable::from([(-2, 1)]));
    let y = examples::pinched_cylinder();
    assert!(matches!(
        local_stalk_table(&y, y.vertex("a0").unwrap(), &z),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn stalks_match_open_star_homology() {
    let cases = [
        examples::cone_over_torus(),
        examples::pinched_cylinder().suspend(),
        examples::cone_over_circle().suspend(),
        examples::wedge_of_spheres(),
    ];
    for s in cases {
        let s = fine(&s);
        let n = s.dimension();
        for p in all_perversities(n) {
            for x in 0..s.ambient().num_vertices() as VertexId {
                if s.ends().contains_vertex(x) || (s.depth(x) == 0 && x % 7 != 0) {
                    continue;
                }
                let stalk = local_stalk_table(&s, x, &p).unwrap();
                let star = ih_dims(&s.open_star(x), &p, Supports::BorelMoore).unwrap();
                for i in 0..=n as i64 {
                    assert_eq!(
                        stalk.get(&-i).copied().unwrap_or(0),
                        star[&i],
                        "{} {p} degree {}",
                        s.ambient().name(x),
                        -i
                    );
                }
            }
        }
    }
}

#[test]
fn normalizing_the_pinched_cylinder() {
    let y = examples::pinched_cylinder();
    let ny = normalize_isolated(&y).unwrap();
    assert_eq!(ny.ambient().components().len(), 2);
    assert!(ny.vertex("apex.1").is_ok() && ny.vertex("apex.2").is_ok());
    assert!(ny.validate().all_passed());
    assert!(is_normal(&ny) && !is_normal(&y));
    for p in all_perversities(2) {
        for supports in [Supports::BorelMoore, Supports::Compact] {
            assert_eq!(ih_dims(&y, &p, supports).unwrap(), ih_dims(&ny, &p, supports).unwrap());
        }
    }
}

#[test]
fn normalizing_a_normal_cone_changes_nothing() {
    let c = examples::cone_over_circle();
    let nc = normalize_isolated(&c).unwrap();
    assert_eq!(nc.ambient().names(), c.ambient().names());
    for d in 0..=2 {
        assert_eq!(nc.ambient().simplices(d), c.ambient().simplices(d));
    }
    assert!(matches!(
        normalize_isolated(&examples::cone_over_circle().suspend()),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn wedge_normalizes_to_two_spheres() {
    let w = examples::wedge_of_spheres();
    let nw = normalize_isolated(&w).unwrap();
    assert_eq!(nw.ambient().components().len(), 2);
    let m = Perversity::middle(2).unwrap();
    assert_eq!(ih_dims(&w, &m, Supports::BorelMoore).unwrap(), table(&[2, 0, 2]));
    assert_eq!(homology_dims(&w, Supports::BorelMoore).unwrap(), table(&[1, 0, 2]));
}

#[test]
fn orientability() {
    assert!(is_orientable(&examples::torus()));
    assert!(is_orientable(&examples::cone_over_torus()));
    assert!(is_orientable(&examples::pinched_cylinder()));
    assert!(!is_orientable(&examples::projective_plane()));
}

#[test]
fn duality_examples() {
    let z = Perversity::zero(2).unwrap();
    let r = duality_report(&examples::octahedron_sphere(), &z, &z).unwrap();
    assert_eq!(r.comparison.left, table(&[1, 0, 1]));
    assert!(r.agrees());
    let r = duality_report(&examples::pinched_cylinder(), &z, &z).unwrap();
    assert_eq!(r.comparison.left, table(&[0, 0, 2]));
    assert_eq!(r.comparison.right, table(&[0, 0, 2]));
    assert!(r.agrees() && r.middle.is_some());
    let r = duality_report(&examples::cone_over_torus(), &Perversity::zero(3).unwrap(), &Perversity::top(3).unwrap()).unwrap();
    assert!(r.agrees(), "{}", r.comparison);
    assert!(r.middle.is_none());
    let r = duality_report(&examples::pinched_cylinder().suspend(), &Perversity::zero(3).unwrap(), &Perversity::top(3).unwrap())
        .unwrap();
    assert!(r.agrees());
    assert!(r.middle.as_ref().unwrap().agrees());
    let three = Perversity::zero(3).unwrap();
    assert!(matches!(
        duality_report(&examples::cone_over_torus(), &three, &three),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn extremal_examples() {
    let r = extremal_comparison(&examples::octahedron_sphere()).unwrap();
    assert!(r.agrees());
    let r = extremal_comparison(&examples::cone_over_torus()).unwrap();
    assert!(r.agrees(), "{}\n{}", r.top_vs_homology, r.zero_vs_cohomology);
    assert_eq!(r.top_vs_homology.left, table(&[0, 0, 2, 1]));
    assert!(matches!(extremal_comparison(&examples::pinched_cylinder()), Err(Error::Precondition(_))));
    assert!(matches!(extremal_comparison(&examples::projective_plane()), Err(Error::Precondition(_))));
    let ny = normalize_isolated(&examples::pinched_cylinder()).unwrap();
    assert!(extremal_comparison(&ny).unwrap().agrees());
}
