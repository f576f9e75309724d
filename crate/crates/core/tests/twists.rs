use std::sync::Arc;

use toro::field::Monomial;
use toro::fock::FockModule;
use toro::partitions::ColorContext;
use toro::rep::*;
use toro::vector::VectorRep;

fn ctx(n: usize, k: usize) -> ColorContext {
    ColorContext::new(n, k as i64).unwrap()
}

/// Same `E`, `F` and `K` data on every probe label.
fn assert_same(a: &dyn Module, b: &dyn Module, labels: &[BasisLabel]) {
    for v in labels {
        for i in 0..a.ctx().n {
            assert_eq!(a.e_action(i, v).unwrap(), b.e_action(i, v).unwrap(), "E{i} on {v}");
            assert_eq!(a.f_action(i, v).unwrap(), b.f_action(i, v).unwrap(), "F{i} on {v}");
            assert_eq!(a.k_eigen(i, v).unwrap(), b.k_eigen(i, v).unwrap(), "K{i} on {v}");
        }
    }
}

#[test]
fn iota_takes_vector_to_barred() {
    for n in 3..6 {
        for k in 0..n {
            for u in [Monomial::ONE, Monomial::q1().pow(2)] {
                let v: ModuleHandle = Arc::new(VectorRep::new(ctx(n, k), u));
                let t = twist(v.clone(), Twist::Iota);
                let bar = VectorRep::barred(ctx(n, (n - k) % n), u.substitute(1, -1));
                assert_same(t.as_ref(), &bar, &v.labels_up_to(5));
            }
        }
    }
}

#[test]
fn tau_lowers_fock_color() {
    for n in 3..6 {
        for k in 0..n {
            let f: ModuleHandle = Arc::new(FockModule::new(ctx(n, k), Monomial::ONE));
            let t = twist(f.clone(), Twist::Tau);
            let g = FockModule::new(ctx(n, (k + n - 1) % n), Monomial::ONE);
            assert_same(t.as_ref(), &g, &f.labels_up_to(5));
        }
    }
}

#[test]
fn shift_rescales_supports() {
    let a = Monomial::q1() * Monomial::q2();
    let f: ModuleHandle = Arc::new(FockModule::new(ctx(3, 1), Monomial::ONE));
    let t = twist(f.clone(), Twist::Shift(a));
    let g = FockModule::new(ctx(3, 1), a);
    assert_same(t.as_ref(), &g, &f.labels_up_to(5));
}
