use lieop::perm::Permutation;
use lieop::robinson::{gpc_cohomology_rank, robinson_cocycle, robinson_map, verify_equivariance};

#[test]
fn cocycle_classes_form_a_basis() {
    for n in 3..=6 {
        let m = robinson_map(n).unwrap();
        assert!(m.class_matrix().is_unimodular(), "n = {n}");
        assert!(m.matrix().is_identity());
        for s in Permutation::all(n - 1).iter().step_by(5) {
            assert!(robinson_cocycle(s).unwrap().is_closed(m.nerve()).unwrap());
        }
    }
}

#[test]
fn suspension_shifts_degree_by_two() {
    for n in 2..=7usize {
        let (degree, rank) = gpc_cohomology_rank(n).unwrap();
        assert_eq!(degree, n as i32 - 1);
        assert_eq!(rank, (1..n).product::<usize>());
    }
}

#[test]
fn report_json_shape() {
    let r = verify_equivariance(3).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["n"], 3);
    let gens = v["generators"].as_array().unwrap();
    let perms: Vec<&str> = gens.iter().map(|g| g["perm"].as_str().unwrap()).collect();
    assert_eq!(perms, vec!["(1 2)", "(1 3)", "(2 3)"]);
    assert!(gens.iter().all(|g| g["pass"] == true));
    assert_eq!(gens[0]["defect"]["entries"], serde_json::json!([["0", "0"], ["0", "0"]]));
}

#[test]
fn small_n_is_rejected() {
    assert!(robinson_map(2).is_err());
    assert!(robinson_cocycle(&Permutation::identity(1)).is_err());
    assert!(gpc_cohomology_rank(1).is_err());
}
