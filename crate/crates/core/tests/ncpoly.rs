mod support;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use braidlift::braided::{CoactionAlgebra, Mode, Realization};
use braidlift::catalog::{builtin, nichols_stage};
use braidlift::expr::{parse, Bindings, Scope};
use braidlift::ncpoly::{Alphabet, Block, Word};
use braidlift::problem::ProblemFile;
use braidlift::{Coeff, Cyc, Poly, System};
use num_traits::Zero;
use proptest::prelude::*;
use support::{dense, DenseReducer};

struct Fixture {
    system: System,
    oracle: std::sync::Mutex<DenseReducer>,
    relations: Vec<Poly>,
}

/// The B2 N=5 Nichols stage below the root-vector powers of x12 and x112:
/// quantum Serre relations plus x1^5 and x2^5.
fn n5_stage2() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let spec = builtin("B2-N5", None).unwrap();
        let system = nichols_stage(&spec, 2).unwrap();
        let p = &spec.problem;
        let free = System::free(system.alphabet().clone(), 16);
        let scope = Scope::block(&p.real, &p.bindings, &free, Block::X);
        let relations: Vec<Poly> = p
            .relations
            .iter()
            .filter(|r| r.stratum < 2)
            .map(|r| scope.eval(&r.expr).unwrap())
            .collect();
        Fixture {
            oracle: std::sync::Mutex::new(DenseReducer::new(&relations, 2)),
            system,
            relations,
        }
    })
}

fn cyc5(c: &[i64]) -> Cyc {
    c.iter().enumerate().fold(Cyc::zero(), |acc, (k, &a)| {
        acc + Cyc::from_int(5, a) * Cyc::zeta_pow(5, k as i64)
    })
}

fn poly_strategy(max_len: usize, terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (
            prop::collection::vec(0u8..2, 0..=max_len),
            prop::collection::vec(-3i64..=3, 4),
        ),
        1..=terms,
    )
    .prop_map(|ts| {
        let mut p = Poly::zero();
        for (l, c) in ts {
            p.add_term(Word::new(&l, &[]), Coeff::constant(cyc5(&c)));
        }
        p
    })
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0u8..2, 0..=max_len)
        .prop_map(|l| Poly::monomial(Word::new(&l, &[]), Coeff::constant(Cyc::from_int(1, 1))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn kernel_agrees_with_dense_reducer(p in poly_strategy(6, 6)) {
        let f = n5_stage2();
        let kernel = dense(&f.system.normal_form(&p).unwrap());
        let oracle = f.oracle.lock().unwrap().normal_form(&p, 2);
        prop_assert_eq!(kernel, oracle);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent_and_irreducible(p in poly_strategy(8, 6)) {
        let s = &n5_stage2().system;
        let nf = s.normal_form(&p).unwrap();
        prop_assert_eq!(&s.normal_form(&nf).unwrap(), &nf);
        for (w, _) in nf.terms() {
            prop_assert!(!s.is_reducible(&w.letters));
        }
    }

    #[test]
    fn normal_form_is_linear(a in poly_strategy(7, 4), b in poly_strategy(7, 4)) {
        let s = &n5_stage2().system;
        let lhs = s.normal_form(&a.add(&b)).unwrap();
        let rhs = s.normal_form(&a).unwrap().add(&s.normal_form(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_preserves_multidegree(p in poly_strategy(8, 6)) {
        let s = &n5_stage2().system;
        let alpha: &Alphabet = s.alphabet();
        let mut parts: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (w, c) in p.terms() {
            parts.entry(w.multidegree(alpha, 2)).or_insert_with(Poly::zero).add_term(w.clone(), c.clone());
        }
        for (md, part) in parts {
            for (w, _) in s.normal_form(&part).unwrap().terms() {
                prop_assert_eq!(w.multidegree(alpha, 2), md.clone());
            }
        }
    }

    #[test]
    fn multiplication_is_associative(a in poly_strategy(4, 3), b in poly_strategy(4, 3), c in poly_strategy(4, 3)) {
        let s = &n5_stage2().system;
        let left = s.multiply(&s.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = s.multiply(&a, &s.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn relations_generate_the_kernel(u in word_strategy(4), v in word_strategy(4), i in 0usize..4) {
        let f = n5_stage2();
        let r = &f.relations[i];
        let product = f.system.normal_form(&u.mul_free(r, f.system.alphabet(), f.system.zeta()).mul_free(&v, f.system.alphabet(), f.system.zeta())).unwrap();
        prop_assert!(product.is_zero());
    }
}

/// Coefficients of 1/((1-t)^2 (1-t^2)(1-t^3)), the PBW series of the Serre quotient.
fn pbw_series(up_to: usize) -> Vec<u64> {
    let mut s = vec![0u64; up_to + 1];
    s[0] = 1;
    for d in [1usize, 1, 2, 3] {
        for k in d..=up_to {
            s[k] += s[k - d];
        }
    }
    s
}

#[test]
fn serre_quotient_has_pbw_hilbert_series() {
    let spec = builtin("B2-even", Some(8)).unwrap();
    let s = nichols_stage(&spec, 1).unwrap();
    let expected = pbw_series(12);
    for (d, e) in expected.iter().enumerate() {
        assert_eq!(s.irreducible_words(d).len() as u64, *e, "degree {d}");
    }
}

const B2_N3: &str = r#"
name = "B2-N3"

[realization]
order = 3
theta = 2
braiding = [[1, -1], [-1, 2]]
names = ["x1", "x2"]

[bindings]
let = ["x12 = ad(1, x2)", "x112 = ad(1, x12)", "x1112 = ad(1, x112)", "x21 = ad(2, x1)", "x221 = ad(2, x21)"]

[relations]
relations = [
  { expr = "x1112", stratum = 0 },
  { expr = "x221", stratum = 0 },
  { expr = "x1^3", stratum = 1 },
  { expr = "x2^3", stratum = 1 },
  { expr = "x12^3", stratum = 2 },
  { expr = "x112^3", stratum = 3 },
]

[options]
degree_bound = 15
"#;

#[test]
fn b2_nichols_at_order_three_has_dimension_81() {
    let p = ProblemFile::from_toml(B2_N3).unwrap().to_problem().unwrap();
    let bound = p.working_bound().unwrap();
    let alpha = p.real.alphabet(&[(Block::X, false)], false);
    let free = System::free(alpha.clone(), bound);
    let scope = Scope::block(&p.real, &p.bindings, &free, Block::X);
    let rels = p
        .relations
        .iter()
        .map(|r| scope.eval(&r.expr).unwrap())
        .collect();
    let s = System::from_relations(alpha, rels, bound).unwrap();
    let counts: Vec<usize> = (0..=bound).map(|d| s.irreducible_words(d).len()).collect();
    assert_eq!(counts.iter().sum::<usize>(), 81, "{counts:?}");
    assert_eq!(counts[bound], 0);
}

#[test]
fn cube_of_primitive_splits_in_the_smash_algebra() {
    let real = Realization::rank_one(3, 1).unwrap();
    let b = Bindings::new();
    let left = System::free(real.alphabet(&[(Block::Y, false)], false), 4);
    let right = System::free(real.alphabet(&[(Block::X, false)], false), 4);
    let f = CoactionAlgebra::build(&real, &left, &right, Mode::RhoHat, 4).unwrap();
    let image = f.apply_expr(&real, &b, &parse("x1^3").unwrap()).unwrap();
    let split = f
        .eval_in_block(&real, &b, &parse("x1^3").unwrap(), Block::Y)
        .unwrap()
        .add(
            &f.eval_in_block(&real, &b, &parse("x1^3").unwrap(), Block::X)
                .unwrap(),
        );
    assert_eq!(image, split);
    let square = f.apply_expr(&real, &b, &parse("x1^2").unwrap()).unwrap();
    assert_eq!(square.len(), 3);
}
