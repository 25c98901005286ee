use cubenet::iso::{self, CubeBase};
use cubenet::product::Family;

const BASES: [CubeBase; 2] = [CubeBase::Binary, CubeBase::Ternary];

#[test]
fn segment_lemma_up_to_4096() {
    for base in BASES {
        // prefix sums once, then every f(l, l + k) is a difference
        let prefix: Vec<u64> = (0..=8192).map(|m| iso::prefix_digit_sum(m, base)).collect();
        for l in 1..=4096usize {
            for k in 1..=l {
                let lhs = prefix[l + k] - prefix[l];
                assert!(lhs >= prefix[k] + k as u64, "{base:?} l={l} k={k}");
            }
        }
    }
}

#[test]
fn closed_form_matches_summation() {
    for base in BASES {
        for m in 0..5000 {
            assert_eq!(iso::prefix_digit_sum(m, base), iso::f_sum_linear(0, m, base));
        }
    }
}

#[test]
fn oracle_equivalence_on_small_cubes() {
    let cases = [(Family::Q, CubeBase::Binary, 1..=4), (Family::Q3, CubeBase::Ternary, 1..=2)];
    for (family, base, dims) in cases {
        for n in dims {
            let g = family.spec(n).unwrap().build();
            for m in 2..=g.vertex_count() {
                assert_eq!(
                    iso::oracle_max_induced_edges(&g, m).unwrap() as u64,
                    iso::max_induced_edges(base, n, m as u64).unwrap(),
                    "{family} n={n} m={m}"
                );
            }
        }
    }
}

#[test]
fn initial_segments_realize_the_maximum() {
    let cases = [(Family::Q, CubeBase::Binary, 12), (Family::Q3, CubeBase::Ternary, 7)];
    for (family, base, n) in cases {
        let g = family.spec(n).unwrap().build();
        let order = g.vertex_count();
        // grow the segment one vertex at a time, counting edges to earlier vertices
        let mut induced = 0u64;
        for v in 0..order {
            induced += g.neighbors(v).filter(|&w| w < v).count() as u64;
            let m = v as u64 + 1;
            assert_eq!(induced, iso::prefix_digit_sum(m, base), "{family} n={n} m={m}");
        }
        let m = order / 3 + 1;
        let member: Vec<bool> = (0..order).map(|v| v < m).collect();
        let m = m as u64;
        assert_eq!(g.edge_boundary(&member) as u64, iso::min_edge_boundary(base, n, m).unwrap());
    }
}

#[test]
fn profile_examples() {
    // Q^3: 4 vertices induce a square, boundary 4
    assert_eq!(iso::max_induced_edges(CubeBase::Binary, 3, 4).unwrap(), 4);
    assert_eq!(iso::min_edge_boundary(CubeBase::Binary, 3, 4).unwrap(), 4);
    // 3Q^2: one full line is a triangle with boundary 3*4 - 6 = 6
    assert_eq!(iso::max_induced_edges(CubeBase::Ternary, 2, 3).unwrap(), 3);
    assert_eq!(iso::min_edge_boundary(CubeBase::Ternary, 2, 3).unwrap(), 6);
    assert_eq!(iso::min_edge_boundary(CubeBase::Binary, 4, 16).unwrap(), 0);
    assert!(iso::max_induced_edges(CubeBase::Binary, 3, 9).is_err());
    assert!(iso::max_induced_edges(CubeBase::Binary, 3, 1).is_err());
}
