use pucc_core::driver::solve;
use pucc_core::model::{generate_instance, verify_solution};
use pucc_core::optimizer::ContainerStatus;
use pucc_core::penalty::configuration_energy;
use pucc_core::search::Budget;
use pucc_core::SolverParams;

#[test]
fn solutions_are_feasible_and_above_the_area_bound() {
    let params = SolverParams::default();
    for (k, family) in ["linear", "inv_sqrt", "sqrt", "inv_two_thirds", "inv_fifth"].iter().enumerate() {
        for n in [1, 2, 3, 7, 12] {
            let instance = generate_instance(family, n).unwrap();
            let res = solve(&instance, &params, Budget::optimizations(400), k as u64);
            let report = verify_solution(&instance, &res.best_configuration, Some(1e-9), params.eps1).unwrap();
            assert!(report.feasible, "{family} {n}: {report:?}");
            assert!(configuration_energy(&instance, &res.best_configuration) <= params.eps1);
            assert!(res.best_radius >= instance.sum_squared_radii().sqrt());
            assert!(res.improvements.windows(2).all(|w| w[1].1 < w[0].1));
            assert_eq!(res.improvements.last().unwrap().1, res.best_radius);
            assert_eq!(res.status, ContainerStatus::Feasible);
        }
    }
}

#[test]
fn effort_budget_makes_runs_reproducible() {
    let params = SolverParams { enable_shs_core: false, ..SolverParams::default() };
    let instance = generate_instance("inv_sqrt", 9).unwrap();
    let a = solve(&instance, &params, Budget::optimizations(1500), 42);
    let b = solve(&instance, &params, Budget::optimizations(1500), 42);
    assert_eq!(a.best_configuration, b.best_configuration);
    assert_eq!(a.stats, b.stats);
    assert_eq!(a.stats.shs_core_calls, 0);
    let c = solve(&instance, &params, Budget::optimizations(1500), 43);
    assert_ne!(a.best_configuration, c.best_configuration);
}

#[test]
fn single_circle_fills_its_container() {
    let instance = generate_instance("linear", 1).unwrap();
    let res = solve(&instance, &SolverParams::default(), Budget::optimizations(50), 0);
    assert!((res.best_radius - 1.0).abs() < 1e-9);
}
