use proptest::prelude::*;
use pucc_core::model::{verify_solution, Configuration, Instance};
use pucc_core::optimizer::augmented_energy;
use pucc_core::penalty::{build_adjacency, energy, evaluate, AdjacencySet};

/// Penalty energy straight from its definition, every pair and every circle.
fn reference_energy(radii: &[f64], coords: &[f64], r: f64) -> f64 {
    let n = radii.len();
    let mut e = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let dist = (coords[2 * i] - coords[2 * j]).hypot(coords[2 * i + 1] - coords[2 * j + 1]);
            e += (radii[i] + radii[j] - dist).max(0.0).powi(2);
        }
        e += (coords[2 * i].hypot(coords[2 * i + 1]) + radii[i] - r).max(0.0).powi(2);
    }
    e
}

fn central_difference(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    (0..x.len())
        .map(|k| {
            let mut p = x.to_vec();
            let mut m = x.to_vec();
            p[k] += h;
            m[k] -= h;
            (f(&p) - f(&m)) / (2.0 * h)
        })
        .collect()
}

fn relative_error(g: &[f64], fd: &[f64]) -> f64 {
    let diff = g.iter().zip(fd).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    let scale = fd.iter().map(|b| b * b).sum::<f64>().sqrt();
    diff / scale.max(1e-6)
}

/// Radii, centers scattered a little beyond the container, and its radius.
fn layout() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, f64)> {
    (2usize..14).prop_flat_map(|n| {
        (
            prop::collection::vec(0.2f64..3.0, n),
            prop::collection::vec(-1.2f64..1.2, 2 * n),
            2.0f64..12.0,
        )
            .prop_map(|(radii, unit, r)| {
                let coords = unit.iter().map(|u| u * r).collect();
                (radii, coords, r)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn energy_gradient_matches_finite_differences((radii, coords, r) in layout()) {
        let adj = AdjacencySet::build(&radii, &coords);
        let mut g = vec![0.0; coords.len()];
        evaluate(&radii, &coords, r, &adj, Some(&mut g));
        let fd = central_difference(|x| reference_energy(&radii, x, r), &coords, 1e-6);
        prop_assert!(relative_error(&g, &fd) < 1e-5, "g={g:?} fd={fd:?}");
    }

    #[test]
    fn augmented_gradient_matches_finite_differences((radii, coords, r) in layout(), rho in 1e-4f64..1.0) {
        let r = r.max(radii.iter().copied().fold(0.0, f64::max));
        let mut z = coords.clone();
        z.push(r);
        let n2 = coords.len();
        let adj = AdjacencySet::build(&radii, &coords);
        let mut g = vec![0.0; z.len()];
        augmented_energy(&radii, &z, rho, &adj, &mut g);
        let f = |z: &[f64]| reference_energy(&radii, &z[..n2], z[n2]) + rho * z[n2] * z[n2];
        let fd = central_difference(f, &z, 1e-6);
        prop_assert!(relative_error(&g, &fd) < 1e-5, "g={g:?} fd={fd:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fresh_adjacency_energy_equals_full_double_loop((radii, coords, r) in layout()) {
        let instance = Instance::new("p", radii).unwrap();
        // Instance sorts its radii; the layout is random either way.
        let config = Configuration::new(coords, r);
        let fast = energy(&instance, &config, &build_adjacency(&instance, &config));
        let full = verify_solution(&instance, &config, None, 1e-25).unwrap().energy;
        prop_assert_eq!(fast.to_bits(), full.to_bits());
    }

    #[test]
    fn energy_is_rotation_invariant((radii, coords, r) in layout(), angle in 0.0f64..std::f64::consts::TAU) {
        let (s, c) = angle.sin_cos();
        let rotated: Vec<f64> = coords
            .chunks(2)
            .flat_map(|p| [c * p[0] - s * p[1], s * p[0] + c * p[1]])
            .collect();
        let e0 = reference_energy(&radii, &coords, r);
        let e1 = evaluate(&radii, &rotated, r, &AdjacencySet::build(&radii, &rotated), None).0;
        prop_assert!((e0 - e1).abs() <= 1e-9 * e0.max(1.0));
    }

    #[test]
    fn adjacency_covers_every_overlap((radii, coords, _r) in layout()) {
        let adj = AdjacencySet::build(&radii, &coords);
        let pairs: Vec<_> = adj.pairs().collect();
        for i in 0..radii.len() {
            for j in i + 1..radii.len() {
                let dist = (coords[2 * i] - coords[2 * j]).hypot(coords[2 * i + 1] - coords[2 * j + 1]);
                if dist < radii[i] + radii[j] {
                    prop_assert!(pairs.contains(&(i, j)));
                }
            }
        }
    }
}
