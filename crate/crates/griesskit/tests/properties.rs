//! Randomized invariant checks across the exact arithmetic stack, the
//! row reducer, the minimal-model tables, and the balance-equation split.
//!
//! Case tables and balance systems are cached: their construction runs
//! quantum-dimension identification, which is far too slow to repeat per
//! proptest case.

use std::sync::OnceLock;

use num_rational::BigRational;
use proptest::prelude::*;

use griesskit::decomp::solve::{balance_system, split_equation, MultiplicitySystem, DEFAULT_BOUND};
use griesskit::decomp::template_for;
use griesskit::exactnum::matrix::{mat_reduce, QFMatrix};
use griesskit::exactnum::QFElement;
use griesskit::griess::build::build_case_table;
use griesskit::griess::definition::{inner, multiply, CaseTable, GriessElement, PairClass};
use griesskit::minimal::fusion::fuse;
use griesskit::minimal::qdim::{is_simple_current, qdim_numeric};
use griesskit::minimal::MinimalModel;
use griesskit::modecalc::{c3_reference_states, w4_inner, Weight4State};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn cached_table(case: PairClass) -> &'static CaseTable {
    static THREE: OnceLock<CaseTable> = OnceLock::new();
    static FIVE: OnceLock<CaseTable> = OnceLock::new();
    let cell = match case {
        PairClass::ThreeC => &THREE,
        _ => &FIVE,
    };
    cell.get_or_init(|| build_case_table(case).expect("case table"))
}

fn cached_system(case: PairClass) -> &'static MultiplicitySystem {
    static THREE: OnceLock<MultiplicitySystem> = OnceLock::new();
    static FIVE: OnceLock<MultiplicitySystem> = OnceLock::new();
    let cell = match case {
        PairClass::ThreeC => &THREE,
        _ => &FIVE,
    };
    cell.get_or_init(|| {
        let template = template_for(case).expect("template");
        balance_system(&template, DEFAULT_BOUND).expect("balance system")
    })
}

fn cached_states() -> &'static [Weight4State] {
    static STATES: OnceLock<Vec<Weight4State>> = OnceLock::new();
    STATES.get_or_init(|| {
        c3_reference_states(cached_table(PairClass::ThreeC))
            .expect("reference states")
            .into_iter()
            .map(|(_, state)| state)
            .collect()
    })
}

fn qf_element(disc: u64) -> impl Strategy<Value = QFElement> {
    ((-40i64..=40, 1i64..=12), (-40i64..=40, 1i64..=12)).prop_map(move |((an, ad), (bn, bd))| {
        QFElement::quadratic(rat(an, ad), rat(bn, bd), disc).expect("squarefree discriminant")
    })
}

fn qf_triple() -> impl Strategy<Value = (QFElement, QFElement, QFElement)> {
    prop::sample::select(vec![2u64, 3, 5, 7])
        .prop_flat_map(|d| (qf_element(d), qf_element(d), qf_element(d)))
}

fn rational_matrix() -> impl Strategy<Value = QFMatrix> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(rows, cols)| {
            proptest::collection::vec(
                proptest::collection::vec((-6i64..=6, 1i64..=4), cols),
                rows,
            )
        })
        .prop_map(|entries| {
            let rows = entries
                .iter()
                .map(|row| row.iter().map(|&(n, d)| QFElement::ratio(n, d)).collect())
                .collect();
            QFMatrix::from_rows(rows).expect("rectangular input")
        })
}

fn small_model() -> impl Strategy<Value = MinimalModel> {
    prop::sample::select(vec![(3u64, 4u64), (4, 5), (5, 6), (7, 8), (11, 12)])
        .prop_map(|(p, q)| MinimalModel::new(p, q).expect("coprime orders"))
}

fn griess_vector(dim: usize) -> impl Strategy<Value = GriessElement> {
    proptest::collection::vec((-8i64..=8, 1i64..=4), dim).prop_map(|coords| {
        GriessElement::new(
            coords
                .into_iter()
                .map(|(n, d)| QFElement::ratio(n, d))
                .collect(),
        )
    })
}

type CaseVectors = (PairClass, GriessElement, GriessElement, GriessElement);

fn case_with_vectors() -> impl Strategy<Value = CaseVectors> {
    prop::sample::select(vec![(PairClass::ThreeC, 3usize), (PairClass::FiveA, 6)]).prop_flat_map(
        |(case, dim)| {
            (
                Just(case),
                griess_vector(dim),
                griess_vector(dim),
                griess_vector(dim),
            )
        },
    )
}

proptest! {
    #[test]
    fn quadratic_elements_form_a_commutative_ring((x, y, z) in qf_triple()) {
        let xy = x.try_mul(&y).unwrap();
        prop_assert_eq!(&xy, &y.try_mul(&x).unwrap());
        prop_assert_eq!(&x.try_add(&y).unwrap(), &y.try_add(&x).unwrap());
        let assoc_l = xy.try_mul(&z).unwrap();
        let assoc_r = x.try_mul(&y.try_mul(&z).unwrap()).unwrap();
        prop_assert_eq!(&assoc_l, &assoc_r);
        let dist_l = x.try_mul(&y.try_add(&z).unwrap()).unwrap();
        let dist_r = xy.try_add(&x.try_mul(&z).unwrap()).unwrap();
        prop_assert_eq!(&dist_l, &dist_r);
        prop_assert!(x.try_sub(&x).unwrap().is_zero());
    }

    #[test]
    fn nonzero_quadratic_elements_invert((x, y, _) in qf_triple()) {
        prop_assume!(!y.is_zero());
        let quotient = x.try_div(&y).unwrap();
        prop_assert_eq!(&quotient.try_mul(&y).unwrap(), &x);
        prop_assert_eq!(&y.try_div(&y).unwrap(), &QFElement::one());
    }

    #[test]
    fn elements_round_trip_through_serialization((x, _, _) in qf_triple()) {
        let json = serde_json::to_string(&x).unwrap();
        let back: QFElement = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(x, back);
    }

    #[test]
    fn row_reduction_reports_a_consistent_decomposition(matrix in rational_matrix()) {
        let reduction = mat_reduce(&matrix);
        let (rows, cols) = (matrix.rows(), matrix.cols());
        prop_assert!(reduction.rank <= rows.min(cols));
        prop_assert_eq!(reduction.rank + reduction.kernel.len(), cols);
        prop_assert_eq!(reduction.pivot_cols.len(), reduction.rank);
        prop_assert!(reduction.pivot_cols.windows(2).all(|w| w[0] < w[1]));
        for vector in &reduction.kernel {
            let image = matrix.mul_vec(vector).unwrap();
            prop_assert!(image.iter().all(QFElement::is_zero), "kernel vector maps to zero");
        }
        if rows == cols {
            let det = reduction.det.as_ref().expect("square matrices have determinants");
            prop_assert_eq!(det.is_zero(), reduction.rank < cols);
        } else {
            prop_assert!(reduction.det.is_none());
        }
    }

    #[test]
    fn kac_weights_respect_the_label_symmetry(
        model in small_model(),
        r_seed in 1u64..100,
        s_seed in 1u64..100,
    ) {
        let (p, q) = (model.p(), model.q());
        let r = 1 + r_seed % (p - 1);
        let s = 1 + s_seed % (q - 1);
        prop_assert_eq!(
            model.weight(r, s).unwrap(),
            model.weight(p - r, q - s).unwrap()
        );
        let canonical = model.canonical(r, s).unwrap();
        prop_assert!(model.check_canonical(&canonical).is_ok());
        prop_assert_eq!(model.h(&canonical).unwrap(), model.weight(r, s).unwrap());
    }

    #[test]
    fn fusion_is_commutative_with_the_vacuum_as_identity(
        model in small_model(),
        i_seed in 0usize..1000,
        j_seed in 0usize..1000,
    ) {
        let labels = model.labels();
        let x = &labels[i_seed % labels.len()];
        let y = &labels[j_seed % labels.len()];
        prop_assert_eq!(fuse(&model, x, y).unwrap(), fuse(&model, y, x).unwrap());
        prop_assert_eq!(fuse(&model, &model.vacuum(), x).unwrap(), vec![*x]);
        for z in fuse(&model, x, y).unwrap() {
            prop_assert!(model.check_canonical(&z).is_ok());
        }
    }

    #[test]
    fn balance_equations_split_without_changing_solutions(
        case in prop::sample::select(vec![PairClass::ThreeC, PairClass::FiveA]),
        seeds in proptest::collection::vec(0u64..=3, 12),
    ) {
        let system = cached_system(case);
        let assignment: Vec<u64> = seeds.into_iter().take(system.vars.len()).collect();
        prop_assume!(assignment.len() == system.vars.len());
        for equation in &system.equations {
            let mut net = QFElement::zero();
            for (i, n) in assignment.iter().enumerate() {
                let count = QFElement::integer(*n as i64);
                let lhs = equation.lhs[i].try_mul(&count).unwrap();
                let rhs = equation.rhs[i].try_mul(&count).unwrap();
                net = net.try_add(&lhs).unwrap().try_sub(&rhs).unwrap();
            }
            let (rational, radical) = split_equation(equation).unwrap();
            let eval = |coeffs: &[i64]| -> i64 {
                coeffs
                    .iter()
                    .zip(&assignment)
                    .map(|(c, n)| c * (*n as i64))
                    .sum()
            };
            let split_holds = eval(&rational.coeffs) == 0 && eval(&radical.coeffs) == 0;
            prop_assert_eq!(net.is_zero(), split_holds, "split changes the solution set");
        }
    }

    #[test]
    fn weight_four_pairings_are_symmetric(i_seed in 0usize..6, j_seed in 0usize..6) {
        let table = cached_table(PairClass::ThreeC);
        let states = cached_states();
        let a = &states[i_seed];
        let b = &states[j_seed];
        prop_assert_eq!(
            w4_inner(table, a, b).unwrap(),
            w4_inner(table, b, a).unwrap()
        );
    }

    #[test]
    fn the_product_and_form_are_bilinear_over_random_vectors(
        (case, x, y, z) in case_with_vectors(),
    ) {
        let table = cached_table(case);
        let sum = x.try_add(&y).unwrap();
        let lhs = multiply(table, &sum, &z).unwrap();
        let rhs = multiply(table, &x, &z)
            .unwrap()
            .try_add(&multiply(table, &y, &z).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        let form_lhs = inner(table, &sum, &z).unwrap();
        let form_rhs = inner(table, &x, &z)
            .unwrap()
            .try_add(&inner(table, &y, &z).unwrap())
            .unwrap();
        prop_assert_eq!(form_lhs, form_rhs);
    }
}

/// Deterministic sweep rather than a proptest: the label sets are small and
/// fixed.  A numeric prefilter keeps the exact identification ladder off the
/// labels whose dimensions are visibly far from one; exhausting the ladder
/// on those would dominate the whole suite.
#[test]
fn simple_currents_permute_the_label_set() {
    for (p, q) in [(3u64, 4u64), (4, 5), (7, 8), (11, 12)] {
        let model = MinimalModel::new(p, q).expect("coprime orders");
        let labels = model.labels();
        let mut current_count = 0;
        for current in &labels {
            let numeric = qdim_numeric(&model, current, 64).expect("dimension");
            if (numeric.to_f64() - 1.0).abs() > 1e-6 {
                continue;
            }
            assert!(
                is_simple_current(&model, current).expect("dimension"),
                "a unit numeric dimension identifies as exactly one in M({p},{q})"
            );
            current_count += 1;
            let mut images = Vec::new();
            for x in &labels {
                let fused = fuse(&model, current, x).expect("fusion");
                assert_eq!(
                    fused.len(),
                    1,
                    "a simple current fuses to one module in M({p},{q})"
                );
                images.push(fused.into_iter().next().unwrap());
            }
            images.sort();
            images.dedup();
            assert_eq!(
                images.len(),
                labels.len(),
                "fusion with a simple current permutes the labels of M({p},{q})"
            );
        }
        assert!(
            current_count >= 2,
            "M({p},{q}) has at least the vacuum and one nontrivial current"
        );
    }
}
