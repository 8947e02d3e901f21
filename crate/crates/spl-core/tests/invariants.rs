//! Cross-module invariants on randomized instances: switching equivalence,
//! spectral conjugation, nodal-domain invariance, the cut-space picture of
//! bipartite boundaries, and equipartitions induced by signed-Laplacian
//! eigenvectors.

use std::collections::BTreeSet;
use std::sync::Arc;

use nalgebra::DVector;
use proptest::prelude::*;

use spl_core::bounds::{homologous, ChainSpace};
use spl_core::graph::{is_bipartite_partition, make_partition, WeightedGraph};
use spl_core::instances::{
    random_connected_graph, random_partition, random_signature, random_switching, SplitMix64,
};
use spl_core::param;
use spl_core::signed::{
    conjugate_by_switching, is_balanced, quadratic_form, signed_laplacian, switch,
    switching_equivalent, Signature,
};
use spl_core::spectral::{eigendecompose, is_nondegenerate, nodal_report};
use spl_core::Tolerances;

fn tol() -> Tolerances {
    Tolerances::default()
}

/// Arbitrary small connected weighted graph driven by a proptest seed.
fn graph_strategy() -> impl Strategy<Value = Arc<WeightedGraph>> {
    (3usize..8, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = SplitMix64::new(seed);
        random_connected_graph(&mut rng, n, 0.5)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn signed_laplacian_quadratic_form_nonnegative(
        g in graph_strategy(),
        seed in any::<u64>(),
    ) {
        let mut rng = SplitMix64::new(seed);
        let s = random_signature(&mut rng, &g);
        let u: Vec<f64> = (0..g.vertex_count()).map(|_| rng.uniform(-3.0, 3.0)).collect();
        let q = quadratic_form(&g, &s, &u);
        prop_assert!(q >= 0.0);
        // Form agrees with the assembled matrix.
        let l = signed_laplacian(&g, &s);
        let uv = DVector::from_row_slice(&u);
        let via = (uv.transpose() * l.matrix() * &uv)[(0, 0)];
        prop_assert!((q - via).abs() <= 1e-12 * q.abs().max(1.0));
    }

    #[test]
    fn switching_equivalence_is_an_equivalence_relation(
        g in graph_strategy(),
        seed in any::<u64>(),
    ) {
        let mut rng = SplitMix64::new(seed);
        let s1 = random_signature(&mut rng, &g);
        let s2 = random_signature(&mut rng, &g);
        let s3 = random_signature(&mut rng, &g);
        // Reflexive.
        prop_assert!(switching_equivalent(&g, &s1, &s1).is_some());
        // Symmetric.
        let ab = switching_equivalent(&g, &s1, &s2).is_some();
        let ba = switching_equivalent(&g, &s2, &s1).is_some();
        prop_assert_eq!(ab, ba);
        // Transitive.
        let bc = switching_equivalent(&g, &s2, &s3).is_some();
        let ac = switching_equivalent(&g, &s1, &s3).is_some();
        if ab && bc {
            prop_assert!(ac);
        }
        // Produced witnesses actually switch.
        if let Some(tau) = switching_equivalent(&g, &s1, &s2) {
            prop_assert_eq!(switch(&g, &s1, &tau).unwrap(), s2);
        }
    }

    #[test]
    fn symmetric_difference_multiplies_signs(
        g in graph_strategy(),
        seed in any::<u64>(),
    ) {
        let mut rng = SplitMix64::new(seed);
        let s1 = random_signature(&mut rng, &g);
        let s2 = random_signature(&mut rng, &g);
        let sd = s1.symmetric_difference(&s2);
        for e in 0..g.edge_count() {
            prop_assert_eq!(sd.sign(e), s1.sign(e) * s2.sign(e));
        }
    }

    #[test]
    fn conjugation_preserves_spectrum_and_maps_eigenvectors(
        g in graph_strategy(),
        seed in any::<u64>(),
    ) {
        let mut rng = SplitMix64::new(seed);
        let s = random_signature(&mut rng, &g);
        let tau = random_switching(&mut rng, g.vertex_count());
        let l = signed_laplacian(&g, &s);
        let switched = switch(&g, &s, &tau).unwrap();
        let l_switched = signed_laplacian(&g, &switched);
        let conj = conjugate_by_switching(&l, &tau);
        // Conjugation assembles the switched Laplacian exactly.
        prop_assert_eq!(&conj, &l_switched);
        let ra = eigendecompose(&l).unwrap();
        let rb = eigendecompose(&l_switched).unwrap();
        for k in 0..ra.dim() {
            prop_assert!((ra.eigenvalue(k) - rb.eigenvalue(k)).abs()
                <= 1e-10 * ra.operator_norm().max(1.0));
        }
        // tau * psi is an eigenvector of the switched operator.
        for k in 0..ra.dim() {
            let psi = ra.eigenvector(k);
            let mapped = DVector::from_iterator(
                psi.len(),
                psi.iter().enumerate().map(|(i, &x)| tau.value(i) * x),
            );
            let residual = l_switched.matrix() * &mapped - &mapped * ra.eigenvalue(k);
            prop_assert!(residual.norm() <= 1e-9 * ra.operator_norm().max(1.0));
        }
    }

    #[test]
    fn balance_iff_fundamental_cycles_positive(
        g in graph_strategy(),
        seed in any::<u64>(),
    ) {
        let mut rng = SplitMix64::new(seed);
        let s = random_signature(&mut rng, &g);
        let space = ChainSpace::new(&g);
        // A fundamental cycle is positive iff it meets the negative set evenly.
        let neg = spl_core::bounds::Gf2Vec::from_indices(
            g.edge_count(),
            s.negative_edges().iter().copied(),
        );
        let all_positive = space.cycle_basis().iter().all(|c| !c.dot(&neg));
        prop_assert_eq!(is_balanced(&g, &s).is_some(), all_positive);
    }

    #[test]
    fn nodal_domains_invariant_under_switching(
        g in graph_strategy(),
        seed in any::<u64>(),
    ) {
        let mut rng = SplitMix64::new(seed);
        let s = random_signature(&mut rng, &g);
        let tau = random_switching(&mut rng, g.vertex_count());
        let switched = switch(&g, &s, &tau).unwrap();
        let report = eigendecompose(&signed_laplacian(&g, &s)).unwrap();
        for k in 0..report.dim() {
            if !is_nondegenerate(&report, k, &tol()) {
                continue;
            }
            let psi = report.eigenvector(k);
            let mapped = DVector::from_iterator(
                psi.len(),
                psi.iter().enumerate().map(|(i, &x)| tau.value(i) * x),
            );
            let a = nodal_report(&g, &s, &psi, Some(k + 1), &tol()).unwrap();
            let b = nodal_report(&g, &switched, &mapped, Some(k + 1), &tol()).unwrap();
            prop_assert_eq!(a.domains_as_sets(), b.domains_as_sets());
            prop_assert!(a.deficiency.unwrap() >= 0);
        }
    }

    #[test]
    fn perturbed_operator_is_block_diagonal_generalized_laplacian(
        g in graph_strategy(),
        seed in any::<u64>(),
    ) {
        let mut rng = SplitMix64::new(seed);
        let nu = 2 + rng.below(2).min(g.vertex_count() - 2);
        let Some(p) = random_partition(&mut rng, &g, nu) else { return Ok(()) };
        let alpha: Vec<f64> = (0..p.boundary_len()).map(|_| rng.uniform(0.3, 3.0)).collect();
        let point = spl_core::param::ParamPoint::new(&p, alpha).unwrap();
        let op = spl_core::param::perturbed_operator(&p, &point);
        let m = op.matrix();
        // Entries across components vanish exactly.
        for i in 0..g.vertex_count() {
            for j in 0..g.vertex_count() {
                if p.component_of(i) != p.component_of(j) {
                    prop_assert_eq!(m[(i, j)], 0.0);
                }
            }
        }
        // Each block is the component Laplacian plus a nonnegative diagonal.
        for comp in p.components() {
            let member: std::collections::HashSet<usize> =
                comp.vertices.iter().copied().collect();
            for &i in &comp.vertices {
                // Off-diagonal inside the block matches the plain Laplacian.
                for &(u, idx) in g.neighbors(i) {
                    if member.contains(&u) {
                        let w = g.edge(idx).weight;
                        prop_assert!((m[(i, u)] + w).abs() < 1e-14);
                    }
                }
                let plain_degree: f64 = g
                    .neighbors(i)
                    .iter()
                    .filter(|(u, _)| member.contains(u))
                    .map(|&(_, idx)| g.edge(idx).weight)
                    .sum();
                prop_assert!(m[(i, i)] >= plain_degree - 1e-14);
            }
        }
    }

    #[test]
    fn balanced_ground_state_has_one_domain(
        g in graph_strategy(),
        seed in any::<u64>(),
    ) {
        let mut rng = SplitMix64::new(seed);
        // Balanced signature: a random cut.
        let side: Vec<bool> = (0..g.vertex_count()).map(|_| rng.chance(0.5)).collect();
        let cut: Vec<usize> = (0..g.edge_count())
            .filter(|&idx| {
                let e = g.edge(idx);
                side[e.i] != side[e.j]
            })
            .collect();
        let s = Signature::from_edge_indices(&g, cut);
        prop_assume!(is_balanced(&g, &s).is_some());
        let report = eigendecompose(&signed_laplacian(&g, &s)).unwrap();
        if is_nondegenerate(&report, 0, &tol()) {
            let nodal =
                nodal_report(&g, &s, &report.eigenvector(0), Some(1), &tol()).unwrap();
            prop_assert_eq!(nodal.domain_count, 1);
        }
    }
}

#[test]
fn cut_space_members_are_bipartite_boundaries() {
    let mut rng = SplitMix64::new(555);
    for _ in 0..40 {
        let g = random_connected_graph(&mut rng, 7, 0.5);
        let space = ChainSpace::new(&g);
        assert_eq!(space.cycle_rank(), g.cyclomatic_number());
        assert_eq!(space.cut_rank(), g.vertex_count() - 1);
        let gamma = random_signature(&mut rng, &g).negative_edges().clone();
        let vec = spl_core::bounds::Gf2Vec::from_indices(g.edge_count(), gamma.iter().copied());
        let in_cut = space.in_cut_space(&vec);
        // Oracle: Gamma is a cut iff it is the boundary of a 2-coloring,
        // found by sign-propagating over the complement edges.
        let balanced_as_cut = is_balanced(&g, &Signature::from_edge_indices(&g, gamma.iter().copied()));
        let is_cut = match balanced_as_cut {
            None => false,
            Some(tau) => (0..g.edge_count()).all(|idx| {
                let e = g.edge(idx);
                let crosses = tau.value(e.i) != tau.value(e.j);
                crosses == gamma.contains(&idx)
            }),
        };
        assert_eq!(in_cut, is_cut);
        // And a bipartite partition boundary is always in the cut space:
        // take the partition induced by any 2-coloring.
        if let Some(tau) = is_balanced(&g, &Signature::from_edge_indices(&g, gamma.iter().copied())) {
            let labels: Vec<usize> = (0..g.vertex_count())
                .map(|v| usize::from(tau.value(v) < 0.0))
                .collect();
            if labels.contains(&1) && labels.contains(&0) {
                if let Ok(p) = make_partition(&g, &labels) {
                    if is_bipartite_partition(&p) {
                        let b = spl_core::bounds::Gf2Vec::from_indices(
                            g.edge_count(),
                            p.boundary().iter().copied(),
                        );
                        assert!(space.in_cut_space(&b));
                    }
                }
            }
        }
    }
}

#[test]
fn eigenvector_nodal_boundaries_are_switching_equivalent_to_gamma() {
    let mut rng = SplitMix64::new(808);
    let mut checked = 0;
    for _ in 0..40 {
        let g = random_connected_graph(&mut rng, 7, 0.5);
        let s = random_signature(&mut rng, &g);
        let space = ChainSpace::new(&g);
        let report = eigendecompose(&signed_laplacian(&g, &s)).unwrap();
        for k in 0..report.dim() {
            if !is_nondegenerate(&report, k, &tol()) {
                continue;
            }
            let psi = report.eigenvector(k);
            let nodal = nodal_report(&g, &s, &psi, Some(k + 1), &tol()).unwrap();
            let boundary: BTreeSet<usize> = nodal.nodal_edges.iter().copied().collect();
            // The nodal boundary signature is switching equivalent to sigma.
            let b_sig = Signature::from_edge_indices(&g, boundary.iter().copied());
            assert!(switching_equivalent(&g, &b_sig, &s).is_some());
            assert!(homologous(&space, &boundary, s.negative_edges()));
            checked += 1;
        }
    }
    assert!(checked > 30);
}

#[test]
fn nondegenerate_eigenvectors_induce_critical_equipartitions() {
    // Any non-degenerate eigenvector of a signed Laplacian induces, through
    // its nodal partition and a switching, an equipartition whose energy is
    // the eigenvalue.
    let mut rng = SplitMix64::new(2025);
    let mut checked = 0;
    for _ in 0..30 {
        let g = random_connected_graph(&mut rng, 7, 0.5);
        let s = random_signature(&mut rng, &g);
        let report = eigendecompose(&signed_laplacian(&g, &s)).unwrap();
        for k in 0..report.dim() {
            if !is_nondegenerate(&report, k, &tol()) {
                continue;
            }
            let psi = report.eigenvector(k);
            let nodal = nodal_report(&g, &s, &psi, Some(k + 1), &tol()).unwrap();
            let mut labels = vec![0usize; g.vertex_count()];
            for (v, d) in nodal.domain_of.iter().enumerate() {
                labels[v] = d.expect("no zero vertices on a non-degenerate eigenvector");
            }
            let Ok(partition) = make_partition(&g, &labels) else { continue };
            // The eigenvector has a nodal partition only when its nodal set
            // is exactly the cross-domain edge set; a nodal edge inside a
            // domain (possible around negative cycles) disqualifies it.
            if nodal.nodal_edges != partition.boundary() {
                continue;
            }
            // Switch sigma to the boundary signature and map the eigenvector.
            let b_sig = Signature::from_boundary(&partition);
            let tau = switching_equivalent(&g, &s, &b_sig)
                .expect("nodal boundary is switching equivalent");
            let mapped = DVector::from_iterator(
                psi.len(),
                psi.iter().enumerate().map(|(i, &x)| tau.value(i) * x),
            );
            let point = param::alpha_from_eigenvector(&partition, &mapped, &tol()).unwrap();
            assert!(param::is_equipartition(&partition, &point, &tol()).unwrap());
            let energy = param::energy(&partition, &point).unwrap();
            assert!(
                (energy - report.eigenvalue(k)).abs()
                    <= 1e-9 * report.operator_norm().max(1.0),
                "energy {} vs eigenvalue {}",
                energy,
                report.eigenvalue(k)
            );
            checked += 1;
        }
    }
    assert!(checked > 30);
}
