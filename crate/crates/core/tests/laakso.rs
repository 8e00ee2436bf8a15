use rough_angle::metric::Metric;
use rough_angle::spaces::{laakso_closed_form, laakso_graph, laakso_sra_points};
use rough_angle::sra::{verify_sra_set, SraParameter};

#[test]
fn diameter_is_one_through_level_six() {
    for level in 0..=6 {
        let g = laakso_graph(level, 6).unwrap();
        assert!((g.diameter() - 1.0).abs() < 1e-12, "level {level}");
    }
}

#[test]
fn designated_points_match_the_closed_form() {
    for level in 1..=6 {
        let g = laakso_graph(level, 6).unwrap();
        for n in 1..=level {
            let pts = laakso_sra_points(&g, n).unwrap();
            let space = g.graph().subspace(&pts.x, 1e-12).unwrap();
            for i in 0..n as usize {
                for k in i + 1..n as usize {
                    let want = laakso_closed_form(i as u32 + 1, k as u32 + 1);
                    assert!((space.dist(i, k) - want).abs() < 1e-12, "level {level}, n {n}, ({i}, {k})");
                }
            }
            let all: Vec<usize> = (0..n as usize).collect();
            assert!(verify_sra_set(&space, &all, SraParameter::new(0.6).unwrap()).unwrap().passed());
        }
    }
}
