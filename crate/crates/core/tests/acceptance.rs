//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the checked values. All comparisons are exact.

use alexmod::corpus::{random_seifert, samples, ten_99};
use alexmod::linalg::det_bareiss;
use alexmod::linalg::nf_nullspace;
use alexmod::numfield::NumberField;
use alexmod::obstruction::{
    build_obstruction_system, cyclic_equivariance_system, jordan_power, phi1_dim_of_basis,
    run_filtration, solution_basis, Decomposition,
};
use alexmod::poly::Poly;
use alexmod::seifert::{alexander_matrix, alexander_polynomial, root_classes};
use alexmod::snf::smith_normal_form;
use alexmod::RepBuilder;
use num_traits::{One, Signed};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn cyclotomic() -> Poly {
    Poly::from_int_coeffs(&[1, -1, 1])
}

#[test]
fn criterion_1_ten_99_alexander_polynomial() {
    let d = alexander_polynomial(&alexander_matrix(&ten_99())).unwrap();
    let expected = cyclotomic().pow(4);
    assert_eq!(d.delta(), &expected);
    println!("ACCEPTANCE 1 PASS: 10_99 alexander polynomial = (t^2 - t + 1)^4 exactly");
}

#[test]
fn criterion_2_ten_99_filtration_dims() {
    let out = run_filtration(&ten_99()).unwrap();
    assert_eq!(out.classes.len(), 1);
    let branch = &out.classes[0].branches[0];
    assert_eq!(branch.modulus, cyclotomic());
    let expect = [(2u32, 2usize), (3, 2), (4, 0)];
    assert_eq!(branch.levels.len(), expect.len());
    for (level, (n, cbar)) in branch.levels.iter().zip(expect) {
        assert_eq!(level.n, n);
        assert_eq!(level.phi1_dim, cbar, "cbar at n={n}");
        assert_eq!(level.cocycle_dim(), cbar + 1, "dim C at n={n}");
    }
    println!("ACCEPTANCE 2 PASS: 10_99 cbar_2 = 2, cbar_3 = 2, cbar_4 = 0 (dim C_n = 3, 3, 1)");
}

#[test]
fn criterion_3_ten_99_decomposition_agreement() {
    let out = run_filtration(&ten_99()).unwrap();
    let filt = out.decomposition();
    assert_eq!(filt.entries(), &[(cyclotomic(), vec![2, 2])]);

    let inv = smith_normal_form(&alexander_matrix(&ten_99()));
    let sq = cyclotomic().pow(2);
    let nontrivial: Vec<&Poly> = inv.factors().iter().filter(|d| !d.is_one()).collect();
    assert_eq!(nontrivial, vec![&sq, &sq]);

    let oracle = Decomposition::from_oracle(&inv, &out.branch_moduli());
    assert!(filt.agrees_with(&oracle), "decompositions disagree");
    println!(
        "ACCEPTANCE 3 PASS: 10_99 decomposition {{2, 2}} at t^2 - t + 1; SNF factors \
         ((t^2 - t + 1)^2, (t^2 - t + 1)^2); agreement flag true"
    );
}

#[test]
fn criterion_4_oracle_equivalence() {
    let mut knots = samples();
    let mut rng = StdRng::seed_from_u64(0xC4C4);
    for trial in 0..100 {
        let genus = 1 + trial % 3; // sizes 2, 4, 6
        knots.push(random_seifert(&mut rng, genus, &format!("rnd_{trial}")));
    }
    let mut checked_classes = 0usize;
    for s in &knots {
        let out = run_filtration(s).unwrap();
        let filt = out.decomposition();
        let inv = smith_normal_form(&alexander_matrix(s));
        let oracle = Decomposition::from_oracle(&inv, &out.branch_moduli());
        assert!(
            filt.agrees_with(&oracle),
            "{}: filtration {:?} != oracle {:?}",
            s.name(),
            filt.entries(),
            oracle.entries()
        );
        checked_classes += filt.entries().len();
    }
    println!(
        "ACCEPTANCE 4 PASS: filtration = oracle decomposition on {} knots ({} root classes)",
        knots.len(),
        checked_classes
    );
}

#[test]
fn criterion_5_cyclic_hom_dimension_identity() {
    let fields = [
        NumberField::new(cyclotomic()).unwrap(),
        NumberField::new(Poly::from_int_coeffs(&[1, -3, 1])).unwrap(),
    ];
    for field in &fields {
        for q in 1u32..=5 {
            for n in 2u32..=7 {
                let sys = cyclic_equivariance_system(q, n, field);
                let branches = nf_nullspace(field, &sys);
                assert_eq!(branches.len(), 1);
                let basis = &branches[0].value;
                let expected = q.min(n - 1) as usize;
                assert_eq!(basis.len(), expected, "dim at q={q} n={n}");
                if q <= n - 2 {
                    let proj = phi1_dim_of_basis(basis, q as usize, n as usize - 1, field);
                    assert_eq!(proj[0].value, 0, "phi1 rank at q={q} n={n}");
                }
            }
        }
    }
    // the level-3 solution dimension of 10_99 follows the identity (d_3 = 4)
    let sys = build_obstruction_system(&ten_99(), &cyclotomic(), 3).unwrap();
    let branches = solution_basis(&sys);
    assert_eq!(branches[0].value.len(), 4);
    println!(
        "ACCEPTANCE 5 PASS: cyclic solution dim = min(q, n-1) for q <= 5, n <= 7; \
         phi1 rank 0 for q <= n-2; 10_99 d_3 = 4"
    );
}

#[test]
fn criterion_6_representation_suite() {
    let mut reps = 0usize;
    for s in samples() {
        let d = alexander_polynomial(&alexander_matrix(&s)).unwrap();
        for (f, _) in root_classes(&d).classes() {
            for n in 2u32..=4 {
                let sys = build_obstruction_system(&s, f, n).unwrap();
                for branch in solution_basis(&sys) {
                    for (idx, sol) in branch.value.iter().enumerate() {
                        let b = RepBuilder::from_solution(&s, &branch.field, n, sol)
                            .expect("nullspace vector solves the system");
                        let check = b.verify_homomorphism(500, 0xB0B + idx as u64);
                        assert!(
                            check.passed,
                            "{} n={n} solution {idx}: {:?}",
                            s.name(),
                            check.witness
                        );
                        reps += 1;
                    }
                }
            }
        }
    }
    // negative control: a corrupted solution must fail with a witness
    let s = ten_99();
    let sys = build_obstruction_system(&s, &cyclotomic(), 3).unwrap();
    let branch = &solution_basis(&sys)[0];
    let good = RepBuilder::from_solution(&s, &branch.field, 3, &branch.value[0]).unwrap();
    let mut phi = good.phi().clone();
    let bumped = &phi.at(0, 0).clone() + &branch.field.one();
    *phi.at_mut(0, 0) = bumped;
    let bad = RepBuilder::new_unchecked(&s, &branch.field, 3, phi).unwrap();
    let check = bad.verify_homomorphism(500, 0xBAD);
    assert!(!check.passed && check.witness.is_some());
    println!(
        "ACCEPTANCE 6 PASS: {} representations verified on 500 pairs each; corrupted \
         solution rejected with witness",
        reps
    );
}

#[test]
fn criterion_7_algebraic_identities() {
    for s in samples() {
        let a = alexander_matrix(&s);
        let d = alexander_polynomial(&a).unwrap();
        assert!(d.at_one().abs().is_one(), "{}", s.name());
        let rev = d.delta().reversed();
        assert!(rev == *d.delta() || rev == -d.delta(), "{}", s.name());

        let inv = smith_normal_form(&a);
        for w in inv.factors().windows(2) {
            assert!(w[1].divisible_by(&w[0]));
        }
        let ratio = det_bareiss(a.matrix()).div_exact(&inv.product());
        assert_eq!(ratio.degree(), Some(0), "{}", s.name());
    }
    for m in 1..=6usize {
        for k in -20i64..=20 {
            let mut iter = jordan_power(m, 0);
            let step = jordan_power(m, k.signum());
            for _ in 0..k.unsigned_abs() {
                iter = iter.mul_mat(&step);
            }
            assert_eq!(iter, jordan_power(m, k), "m={m} k={k}");
        }
    }
    println!(
        "ACCEPTANCE 7 PASS: delta(1) = +-1 and coefficient symmetry on the corpus; \
         jordan binomial formula for m <= 6, |k| <= 20; SNF chain and unit product"
    );
}
