//! Deterministic constructors for the test-suite complexes: simplex
//! boundaries, platonic sphere triangulations, the minimal torus and
//! projective-plane triangulations, skeletons, cones and disjoint unions.

use crate::complex::{betti_numbers, Field, SimplicialComplex, Vertex};

/// Known invariants recorded with a generated complex; checked at
/// construction time.
#[derive(Debug, Clone, Default)]
pub struct Expected {
    pub betti_rationals: Option<Vec<usize>>,
    pub betti_gf2: Option<Vec<usize>>,
    pub simplex_counts: Option<Vec<usize>>,
    /// every codimension-1 face lies in exactly two top faces
    pub closed_at_top: bool,
    pub dual_graph_diameter: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct NamedComplex {
    pub name: String,
    pub complex: SimplicialComplex,
    pub expected: Expected,
}

impl NamedComplex {
    fn checked(name: &str, complex: SimplicialComplex, expected: Expected) -> Self {
        if let Some(counts) = &expected.simplex_counts {
            let actual: Vec<usize> = (0..=complex.dim()).map(|d| complex.len(d)).collect();
            assert_eq!(&actual, counts, "{name}: simplex counts");
        }
        if let Some(b) = &expected.betti_rationals {
            assert_eq!(&betti_numbers(&complex, Field::Rationals), b, "{name}: rational Betti");
        }
        if let Some(b) = &expected.betti_gf2 {
            assert_eq!(&betti_numbers(&complex, Field::Gf2), b, "{name}: GF(2) Betti");
        }
        if expected.closed_at_top {
            assert!(complex.is_closed_at_top(), "{name}: not closed at the top dimension");
        }
        if let Some(diam) = expected.dual_graph_diameter {
            assert_eq!(dual_graph_diameter(&complex), diam, "{name}: dual graph diameter");
        }
        NamedComplex { name: name.to_string(), complex, expected }
    }
}

/// BFS diameter of the graph on the top simplices, adjacent when they share
/// a facet.
fn dual_graph_diameter(k: &SimplicialComplex) -> usize {
    use crate::complex::incidence_matrix;
    let t = k.dim();
    let b = incidence_matrix(k, t).expect("top dimension");
    let n = k.len(t);
    let mut adj = vec![Vec::new(); n];
    for r in 0..b.rows {
        let cofaces: Vec<usize> = (0..b.cols).filter(|&c| b.get(r, c) != 0).collect();
        for i in 0..cofaces.len() {
            for j in (i + 1)..cofaces.len() {
                adj[cofaces[i]].push(cofaces[j]);
                adj[cofaces[j]].push(cofaces[i]);
            }
        }
    }
    let mut diameter = 0;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        diameter = diameter.max(*dist.iter().max().unwrap());
    }
    diameter
}

/// ∂Δⁿ: all proper faces of the n-simplex, a triangulated (n-1)-sphere.
pub fn boundary_of_simplex(n: usize) -> NamedComplex {
    assert!(n >= 2);
    let verts: Vec<Vertex> = (0..=n as Vertex).collect();
    let mut facets = Vec::new();
    for omit in 0..=n {
        let f: Vec<Vertex> = verts.iter().copied().filter(|&v| v != omit as Vertex).collect();
        facets.push(f);
    }
    let complex = SimplicialComplex::from_facets(&facets).unwrap();
    let mut betti = vec![0usize; n];
    betti[0] = 1;
    betti[n - 1] = 1;
    NamedComplex::checked(
        &format!("boundary_simplex_{n}"),
        complex,
        Expected {
            betti_rationals: Some(betti),
            closed_at_top: true,
            dual_graph_diameter: Some(1),
            ..Default::default()
        },
    )
}

pub fn octahedron() -> NamedComplex {
    // antipodal pairs (0,1), (2,3), (4,5); faces avoid antipodal vertices
    let mut facets = Vec::new();
    for a in [0u32, 1] {
        for b in [2u32, 3] {
            for c in [4u32, 5] {
                facets.push(vec![a, b, c]);
            }
        }
    }
    let complex = SimplicialComplex::from_facets(&facets).unwrap();
    NamedComplex::checked(
        "octahedron",
        complex,
        Expected {
            betti_rationals: Some(vec![1, 0, 1]),
            simplex_counts: Some(vec![6, 12, 8]),
            closed_at_top: true,
            dual_graph_diameter: Some(3), // dual graph is the cube graph
            ..Default::default()
        },
    )
}

pub fn icosahedron() -> NamedComplex {
    // caps around vertices 0 and 11, antiprism band between
    // pentagons 1..=5 and 6..=10
    let mut facets: Vec<Vec<Vertex>> = Vec::new();
    for i in 0..5u32 {
        let a = 1 + i;
        let b = 1 + (i + 1) % 5;
        let c = 6 + i;
        let d = 6 + (i + 1) % 5;
        facets.push(vec![0, a, b]);
        facets.push(vec![11, c, d]);
        facets.push(vec![a, b, d]);
        facets.push(vec![a, c, d]);
    }
    let complex = SimplicialComplex::from_facets(&facets).unwrap();
    NamedComplex::checked(
        "icosahedron",
        complex,
        Expected {
            betti_rationals: Some(vec![1, 0, 1]),
            simplex_counts: Some(vec![12, 30, 20]),
            closed_at_top: true,
            dual_graph_diameter: Some(5), // dual graph is the dodecahedron graph
            ..Default::default()
        },
    )
}

/// The 7-vertex Möbius–Kantor triangulation of the torus: triangles
/// {i, i+1, i+3} and {i, i+2, i+3} over Z_7.
pub fn torus_7() -> NamedComplex {
    let mut facets = Vec::new();
    for i in 0..7u32 {
        facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    let complex = SimplicialComplex::from_facets(&facets).unwrap();
    NamedComplex::checked(
        "torus7",
        complex,
        Expected {
            betti_rationals: Some(vec![1, 2, 1]),
            betti_gf2: Some(vec![1, 2, 1]),
            simplex_counts: Some(vec![7, 21, 14]),
            closed_at_top: true,
            ..Default::default()
        },
    )
}

/// The 6-vertex triangulation of the real projective plane (antipodal
/// quotient of the icosahedron).
pub fn rp2_6() -> NamedComplex {
    let facets: Vec<Vec<Vertex>> = vec![
        vec![0, 1, 3],
        vec![0, 1, 4],
        vec![0, 2, 3],
        vec![0, 2, 5],
        vec![0, 4, 5],
        vec![1, 2, 4],
        vec![1, 2, 5],
        vec![1, 3, 5],
        vec![2, 3, 4],
        vec![3, 4, 5],
    ];
    let complex = SimplicialComplex::from_facets(&facets).unwrap();
    NamedComplex::checked(
        "rp2",
        complex,
        Expected {
            betti_rationals: Some(vec![1, 0, 0]),
            betti_gf2: Some(vec![1, 1, 1]),
            simplex_counts: Some(vec![6, 15, 10]),
            closed_at_top: true,
            ..Default::default()
        },
    )
}

/// A single filled triangle.
pub fn triangle() -> NamedComplex {
    let complex = SimplicialComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
    NamedComplex::checked(
        "triangle",
        complex,
        Expected { betti_rationals: Some(vec![1, 0, 0]), ..Default::default() },
    )
}

/// The k-skeleton: all simplices of dimension ≤ k.
pub fn k_skeleton(k: &NamedComplex, dim: usize) -> NamedComplex {
    assert!(dim <= k.complex.dim());
    let mut simplices = Vec::new();
    for d in 0..=dim {
        simplices.extend(k.complex.simplices(d).iter().cloned());
    }
    let complex = SimplicialComplex::from_all_simplices(&simplices).unwrap();
    NamedComplex::checked(
        &format!("skeleton_{dim}_{}", k.name),
        complex,
        Expected::default(),
    )
}

/// The cone: a fresh apex joined to every simplex. Always contractible.
pub fn cone(k: &NamedComplex) -> NamedComplex {
    let apex: Vertex = k.complex.vertices().iter().copied().max().unwrap() + 1;
    let mut simplices = k.complex.all_simplices();
    simplices.push(vec![apex]);
    for s in k.complex.all_simplices() {
        let mut coned = s.clone();
        coned.push(apex);
        simplices.push(coned);
    }
    let complex = SimplicialComplex::from_all_simplices(&simplices).unwrap();
    let mut betti = vec![0usize; complex.dim() + 1];
    betti[0] = 1;
    NamedComplex::checked(
        &format!("cone_{}", k.name),
        complex,
        Expected { betti_rationals: Some(betti), ..Default::default() },
    )
}

/// Disjoint union, relabeling the second complex past the first.
pub fn disjoint_union(a: &NamedComplex, b: &NamedComplex) -> NamedComplex {
    let offset = a.complex.vertices().iter().copied().max().unwrap() + 1;
    let mut facets = a.complex.maximal_simplices();
    for f in b.complex.maximal_simplices() {
        facets.push(f.iter().map(|&v| v + offset).collect());
    }
    let complex = SimplicialComplex::from_facets(&facets).unwrap();
    NamedComplex::checked(
        &format!("union_{}_{}", a.name, b.name),
        complex,
        Expected::default(),
    )
}

/// The built-in verification suite.
pub fn suite() -> Vec<NamedComplex> {
    let b3 = boundary_of_simplex(3);
    let tri = triangle();
    vec![
        boundary_of_simplex(3),
        boundary_of_simplex(4),
        octahedron(),
        icosahedron(),
        torus_7(),
        rp2_6(),
        triangle(),
        cone(&b3),
        k_skeleton(&b3, 1),
        disjoint_union(&tri, &tri),
    ]
}

/// Resolve a generator by CLI name, e.g. "octahedron" or "boundary_simplex:4".
pub fn by_name(name: &str) -> Option<NamedComplex> {
    if let Some(rest) = name.strip_prefix("boundary_simplex:") {
        let n: usize = rest.parse().ok()?;
        if !(2..=8).contains(&n) {
            return None;
        }
        return Some(boundary_of_simplex(n));
    }
    match name {
        "octahedron" => Some(octahedron()),
        "icosahedron" => Some(icosahedron()),
        "torus7" => Some(torus_7()),
        "rp2" => Some(rp2_6()),
        "triangle" => Some(triangle()),
        "cone_boundary_simplex_3" => Some(cone(&boundary_of_simplex(3))),
        "skeleton_1_boundary_simplex_3" => Some(k_skeleton(&boundary_of_simplex(3), 1)),
        "two_triangles" => Some(disjoint_union(&triangle(), &triangle())),
        _ => None,
    }
}

pub fn generator_names() -> Vec<&'static str> {
    vec![
        "boundary_simplex:<n>",
        "octahedron",
        "icosahedron",
        "torus7",
        "rp2",
        "triangle",
        "cone_boundary_simplex_3",
        "skeleton_1_boundary_simplex_3",
        "two_triangles",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_generators_build_and_verify() {
        for named in suite() {
            assert!(named.complex.len(0) > 0, "{}", named.name);
        }
    }

    #[test]
    fn boundary_simplex_counts() {
        let s2 = boundary_of_simplex(2);
        assert_eq!(s2.complex.dim(), 1);
        assert_eq!(s2.complex.len(1), 3);

        let s3 = boundary_of_simplex(3);
        assert_eq!(
            (s3.complex.len(0), s3.complex.len(1), s3.complex.len(2)),
            (4, 6, 4)
        );

        let s4 = boundary_of_simplex(4);
        assert_eq!(s4.complex.euler_characteristic(), 0); // S³
    }

    #[test]
    fn icosahedron_euler_characteristic() {
        assert_eq!(icosahedron().complex.euler_characteristic(), 2);
    }

    #[test]
    fn octahedron_edge_rows_have_two_cofaces() {
        let oct = octahedron();
        let b2 = crate::complex::incidence_matrix(&oct.complex, 2).unwrap();
        for r in 0..b2.rows {
            let nonzero = (0..b2.cols).filter(|&c| b2.get(r, c) != 0).count();
            assert_eq!(nonzero, 2);
        }
    }

    #[test]
    fn torus_is_closed_with_zero_euler() {
        let t = torus_7();
        assert_eq!(t.complex.euler_characteristic(), 0);
        assert!(t.complex.is_closed_at_top());
    }

    #[test]
    fn skeleton_of_sphere_is_k4() {
        let k = k_skeleton(&boundary_of_simplex(3), 1);
        assert_eq!(k.complex.dim(), 1);
        assert_eq!(k.complex.len(1), 6);
        assert_eq!(betti_numbers(&k.complex, Field::Rationals), vec![1, 3]);
    }

    #[test]
    fn cone_is_contractible() {
        let c = cone(&torus_7());
        let b = betti_numbers(&c.complex, Field::Rationals);
        assert_eq!(b[0], 1);
        assert!(b[1..].iter().all(|&x| x == 0));
    }

    #[test]
    fn union_doubles_components() {
        let u = disjoint_union(&triangle(), &triangle());
        assert_eq!(betti_numbers(&u.complex, Field::Rationals)[0], 2);
    }

    #[test]
    fn lookup_by_name() {
        assert!(by_name("octahedron").is_some());
        assert!(by_name("boundary_simplex:3").is_some());
        assert!(by_name("nope").is_none());
    }
}
