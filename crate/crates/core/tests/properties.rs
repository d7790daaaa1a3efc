use dualsurf::{dual_to_line, line_to_dual, Dual, DualVec3};
use nalgebra::Vector3;
use proptest::prelude::*;

fn dual() -> impl Strategy<Value = Dual> {
    (-1e3..1e3f64, -1e3..1e3f64).prop_map(|(re, du)| Dual::new(re, du))
}

fn vec3(r: f64) -> impl Strategy<Value = Vector3<f64>> {
    prop::array::uniform3(-r..r).prop_map(Vector3::from)
}

fn dual_vec() -> impl Strategy<Value = DualVec3> {
    (vec3(10.0), vec3(10.0)).prop_map(|(re, du)| DualVec3 { re, du })
}

fn unit() -> impl Strategy<Value = Vector3<f64>> {
    vec3(1.0).prop_filter("away from zero", |v| v.norm() > 0.1).prop_map(|v| v.normalize())
}

fn close(a: Dual, b: Dual, scale: f64) -> bool {
    let tol = 1e-12 * scale.max(1.0);
    (a.re - b.re).abs() <= tol && (a.du - b.du).abs() <= tol
}

proptest! {
    #[test]
    fn ring_axioms_hold(a in dual(), b in dual(), c in dual()) {
        let scale = (a.re.abs() + a.du.abs() + 1.0) * (b.re.abs() + b.du.abs() + 1.0) * (c.re.abs() + c.du.abs() + 1.0);
        prop_assert!(close((a * b) * c, a * (b * c), scale));
        prop_assert!(close(a * (b + c), a * b + a * c, scale));
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a + b, b + a);
    }

    #[test]
    fn division_inverts_multiplication(a in dual(), b in dual()) {
        prop_assume!(b.re.abs() > 1e-2);
        let q = (a * b).checked_div(b).unwrap();
        prop_assert!(close(q, a, 1e3 * (1.0 + a.re.abs() + a.du.abs()) / b.re.abs()));
    }

    #[test]
    fn lagrange_identity(a in dual_vec(), b in dual_vec()) {
        // ⟨a×b, a×b⟩ = ⟨a,a⟩⟨b,b⟩ − ⟨a,b⟩²
        let c = a.cross(&b);
        let lhs = c.dot(&c);
        let rhs = a.dot(&a) * b.dot(&b) - a.dot(&b).square();
        prop_assert!(close(lhs, rhs, 1e6));
    }

    #[test]
    fn normalize_is_idempotent(v in dual_vec()) {
        prop_assume!(v.re.norm() > 0.1);
        let n = v.normalize().unwrap();
        prop_assert!(n.is_dual_unit(1e-12));
        let (re, du) = n.normalize().unwrap().max_abs_diff(&n);
        prop_assert!(re <= 1e-12 && du <= 1e-9);
    }

    #[test]
    fn line_round_trip(p in vec3(50.0), a in unit()) {
        let line = dual_to_line(&line_to_dual(&p, &a).unwrap()).unwrap();
        prop_assert!((line.direction - a).norm() <= 1e-12);
        prop_assert!(line.distance_to(&p) <= 1e-12 * (1.0 + p.norm()));
    }

    #[test]
    fn dual_vector_ignores_point_choice(p in vec3(50.0), a in unit(), t in -20.0..20.0f64) {
        let here = line_to_dual(&p, &a).unwrap();
        let there = line_to_dual(&(p + a * t), &a).unwrap();
        let (re, du) = here.max_abs_diff(&there);
        prop_assert!(re == 0.0 && du <= 1e-12 * (1.0 + p.norm() + t.abs()));
    }
}
