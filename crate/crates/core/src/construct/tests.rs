use super::*;
use crate::verify::{
    half_expansion_check, robust_brute_force, vertex_connectivity, VerifyOptions, DEFAULT_BUDGET,
};

fn degrees(g: &Graph) -> Vec<usize> {
    g.nodes().map(|u| g.degree(u).unwrap()).collect()
}

fn brute(g: &Graph, nf: usize) -> bool {
    robust_brute_force(g, nf, &VerifyOptions::default())
        .unwrap()
        .robust
}

fn ids(r: std::ops::Range<usize>) -> Vec<NodeId> {
    r.map(NodeId).collect()
}

#[test]
fn cycle_examples() {
    let (g, ring) = build_cycle(8).unwrap();
    assert_eq!(g.link_count(), 8);
    assert!(degrees(&g).iter().all(|&d| d == 2));
    assert_eq!(ring.len(), 8);
    assert_eq!(build_cycle(3).unwrap().0.link_count(), 3);
    assert_eq!(vertex_connectivity(&build_cycle(9).unwrap().0), 2);
    assert!(build_cycle(2).is_err());
}

#[test]
fn circulant_even_examples() {
    let g = build_circulant(8, 3).unwrap();
    assert_eq!(g.link_count(), 16);
    assert!(degrees(&g).iter().all(|&d| d == 4));
    assert!(brute(&g, 3));

    let g = build_circulant(8, 4).unwrap();
    assert_eq!(g.link_count(), 20);
    assert!(degrees(&g).iter().all(|&d| d == 5));
    for i in 0..4 {
        assert!(g.has_edge(NodeId(i), NodeId(i + 4)));
    }

    let (c6, _) = build_cycle(6).unwrap();
    assert_eq!(build_circulant(6, 1).unwrap(), c6);
}

#[test]
fn circulant_odd_has_one_heavy_node() {
    let g = build_circulant(7, 4).unwrap();
    let d = degrees(&g);
    assert_eq!(d.iter().filter(|&&x| x == 6).count(), 1);
    assert_eq!(d.iter().filter(|&&x| x == 5).count(), 6);
    assert!(brute(&g, 4));
    assert_eq!(g.link_count(), optimal_links(7, 4));

    let g = build_circulant(7, 3).unwrap();
    assert!(degrees(&g).iter().all(|&x| x == 4));
    assert!(brute(&g, 3));
}

#[test]
fn circulant_preconditions() {
    assert!(build_circulant(8, 0).is_err());
    assert!(build_circulant(8, 7).is_err());
    assert!(build_circulant(8, 6).is_ok());
    assert!(build_circulant(8, 6).unwrap().is_complete());
}

#[test]
fn halves_f1_examples() {
    let g = build_halves_f1(8).unwrap();
    assert_eq!(g.link_count(), 20);
    assert!(degrees(&g).iter().all(|&d| d == 5));
    assert!(brute(&g, 4));
    let r = half_expansion_check(&g, &ids(0..4), &ids(4..8), 4, DEFAULT_BUDGET).unwrap();
    assert!(r.ok);
    assert_eq!(r.checks, 28);

    let g = build_halves_f1(6).unwrap();
    assert_eq!(g.link_count(), 12);
    assert!(brute(&g, 3));

    let g = build_halves_f1(10).unwrap();
    assert_eq!(g.link_count(), 30);
    assert!(build_halves_f1(4).is_err());
    assert!(build_halves_f1(7).is_err());
}

#[test]
fn halves_f_examples() {
    let cases = [
        (12, 3, 24),
        (10, 2, 15),
        (12, 4, 30),
        (10, 3, 20),
        (10, 4, 25),
        (12, 2, 18),
    ];
    for (n, nf, links) in cases {
        let g = build_halves_f(n, nf).unwrap();
        assert_eq!(g.link_count(), links, "n={n} nf={nf}");
        assert!(degrees(&g).iter().all(|&d| d == nf + 1), "n={n} nf={nf}");
        assert!(brute(&g, nf), "n={n} nf={nf}");
    }
    assert!(build_halves_f(12, 1).is_err());
    assert!(build_halves_f(12, 6).is_err());
}

#[test]
fn static_spec_resolves_factor() {
    let spec = StaticSpec {
        n: 10,
        nf: None,
        method: StaticMethod::HalvesF,
        f: Some("2.5".parse().unwrap()),
        m: None,
    };
    assert_eq!(spec.resolve_nf().unwrap(), 2);
    let spec = StaticSpec {
        f: Some("5/3".parse().unwrap()),
        ..spec
    };
    assert_eq!(spec.build().unwrap().link_count(), 20);
    let spec = StaticSpec {
        f: Some(Factor::integer(3).unwrap()),
        ..spec
    };
    assert!(spec.resolve_nf().is_err());
    let spec = StaticSpec {
        f: Some(Factor::integer(1).unwrap()),
        n: 12,
        ..spec
    };
    assert!(spec.resolve_nf().is_err());
}

#[test]
fn static_spec_rejects_zero_nf() {
    let spec = StaticSpec {
        n: 9,
        nf: Some(0),
        method: StaticMethod::Circulant,
        f: None,
        m: None,
    };
    assert!(matches!(spec.build(), Err(Error::InvalidArgument(_))));
}

#[test]
fn msets_examples() {
    let g = build_msets(12, 2).unwrap();
    assert_eq!(g.link_count(), 24);
    assert!(degrees(&g).iter().all(|&d| d == 4));
    assert!(brute(&g, 3));

    let g = build_msets(16, 2).unwrap();
    assert_eq!(g.link_count(), 40);
    assert_eq!(vertex_connectivity(&g), 5);

    let g = build_msets(8, 2).unwrap();
    assert!(degrees(&g).iter().all(|&d| d == 3));
    assert!(brute(&g, 2));

    assert!(build_msets(12, 1).is_err());
    assert!(build_msets(10, 2).is_err());
    assert!(build_msets(4, 2).is_err());
}

#[test]
fn optimal_links_examples() {
    assert_eq!(optimal_links(8, 4), 20);
    assert_eq!(optimal_links(12, 2), 18);
    assert_eq!(optimal_links(8, 3), 16);
    assert_eq!(optimal_links(7, 4), 18);
    // closed form from the two-halves accounting
    for n in (6..=20).step_by(2) {
        for nf in 1..=n / 2 {
            let m = n / 2 - nf;
            assert_eq!(optimal_links(n, nf), n * n / 4 + n / 2 - n * m / 2);
        }
    }
}

#[test]
fn fixtures_match_reference_counts() {
    for (n, links) in [(8, 20), (10, 30), (12, 42)] {
        let g = fixture_matrix(n).unwrap();
        assert_eq!(g.link_count(), links);
        assert!(degrees(&g).iter().all(|&d| d == n / 2 + 1));
    }
    assert!(fixture_matrix(9).is_err());
}

#[test]
fn fixture_ten_expands() {
    let g = fixture_matrix(10).unwrap();
    let r = half_expansion_check(&g, &ids(0..5), &ids(5..10), 5, DEFAULT_BUDGET).unwrap();
    assert!(r.ok);
}

#[test]
fn builders_are_deterministic() {
    assert_eq!(build_circulant(11, 4).unwrap(), build_circulant(11, 4).unwrap());
    assert_eq!(build_halves_f(12, 3).unwrap(), build_halves_f(12, 3).unwrap());
}
