use std::f64::consts::PI;

use chiralqw::distance::{
    global_max_over_sources, quantum_classical_distance, walker_distance, walker_distance_profile,
};
use chiralqw::graph::Graph;
use chiralqw::walk::{build_generator, diagonalize, Propagator};
use chiralqw_oracle::{graphs, walks};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn prop(g: &Graph, phases: &[f64]) -> Propagator {
    diagonalize(&build_generator(g, Some(phases)).unwrap()).unwrap()
}

fn phases(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.random_range(-PI..PI)).collect()
}

#[test]
fn path2_quantum_classical_two_routes() {
    let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let p = diagonalize(&build_generator(&g, None).unwrap()).unwrap();
    let t: f64 = 1.0;
    let q12 = t.sin().powi(2);
    let c12 = (1.0 - (-2.0 * t).exp()) / 2.0;
    let closed = 1.0 - ((1.0 - c12) * (1.0 - q12) + c12 * q12);
    let q = walks::transition(&walks::unitary(&walks::hamiltonian(2, g.edges(), &[0.0]), t));
    let c = walks::classical(2, g.edges(), t);
    let via_expm = 1.0 - (c[(0, 0)] * q[(0, 0)] + c[(0, 1)] * q[(0, 1)]);
    let got = quantum_classical_distance(&p, &g, t, 0).unwrap();
    assert!((got - closed).abs() < 1e-10);
    assert!((got - via_expm).abs() < 1e-10);
}

#[test]
fn tree_walkers_differ_in_overlap_but_not_in_probability() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let g = Graph::from_edges(10, &graphs::random_tree(10, &mut rng)).unwrap();
    let ph = phases(&mut rng, g.edge_count());
    let chiral = prop(&g, &ph);
    let plain = prop(&g, &vec![0.0; g.edge_count()]);
    let t = 1.3;
    let uc = walks::unitary(&walks::hamiltonian(10, g.edges(), &ph), t);
    let un = walks::unitary(&walks::hamiltonian(10, g.edges(), &vec![0.0; g.edge_count()]), t);
    let overlap = uc.adjoint() * &un;
    let mut any_nonzero = false;
    for j in 0..10 {
        let want = 1.0 - overlap[(j, j)].norm_sqr();
        let got = walker_distance(&chiral, &plain, t, j).unwrap();
        assert!((got - want).abs() < 1e-10);
        any_nonzero |= got > 1e-3;
    }
    assert!(any_nonzero);
}

#[test]
fn three_forms_of_walker_distance_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..5 {
        let g = Graph::from_edges(20, &graphs::random_connected(20, 15, &mut rng)).unwrap();
        let (pl, pm) = (phases(&mut rng, g.edge_count()), phases(&mut rng, g.edge_count()));
        let t = rng.random_range(0.2..4.0);
        let ul = walks::unitary(&walks::hamiltonian(20, g.edges(), &pl), t);
        let um = walks::unitary(&walks::hamiltonian(20, g.edges(), &pm), t);
        let a = prop(&g, &pl);
        let b = prop(&g, &pm);
        let lib = walker_distance_profile(&a, &b, t).unwrap();
        let rev = walker_distance_profile(&b, &a, t).unwrap();
        let elem = ul.adjoint() * &um;
        for j in 0..20 {
            let psi_l = ul.column(j).into_owned();
            let psi_m = um.column(j).into_owned();
            // density-matrix fidelity of two pure states: tr(ρ_l ρ_m)
            let rho_l: DMatrix<Complex64> = &psi_l * psi_l.adjoint();
            let rho_m: DMatrix<Complex64> = &psi_m * psi_m.adjoint();
            let fidelity = (rho_l * rho_m).trace().re;
            let overlap = psi_l.dotc(&psi_m).norm_sqr();
            let element = elem[(j, j)].norm_sqr();
            assert!((lib[j] - (1.0 - fidelity)).abs() < 1e-10);
            assert!((lib[j] - (1.0 - overlap)).abs() < 1e-10);
            assert!((lib[j] - (1.0 - element)).abs() < 1e-10);
            assert!((lib[j] - rev[j]).abs() < 1e-12);
            assert!((-1e-10..=1.0 + 1e-10).contains(&lib[j]));
        }
    }
}

#[test]
fn global_max_equals_brute_force_loop() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..3 {
        let n = rng.random_range(30..=100);
        let g = Graph::from_edges(n, &graphs::random_connected(n, n, &mut rng)).unwrap();
        let a = prop(&g, &phases(&mut rng, g.edge_count()));
        let b = prop(&g, &phases(&mut rng, g.edge_count()));
        let profile = walker_distance_profile(&a, &b, 1.0).unwrap();
        let mut brute = f64::NEG_INFINITY;
        for j in 0..n {
            let d = walker_distance(&a, &b, 1.0, j).unwrap();
            if d > brute {
                brute = d;
            }
        }
        assert_eq!(global_max_over_sources(n, |j| profile[j]).unwrap(), brute);
    }
}

#[test]
fn zero_phase_walkers_coincide() {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
    let zeros = vec![0.0; g.edge_count()];
    let d = walker_distance_profile(&prop(&g, &zeros), &prop(&g, &zeros), 2.0).unwrap();
    assert!(d.iter().all(|&x| x.abs() < 1e-12));
}
