use nglab_core::k46::{
    bijection_check, build_k46, frobenius_identity_check, make_env, s4_nonrational, special_set_report,
    square_transfer, third_root_exclusion_check, verify_certificate, BuildMode,
};
use nglab_core::neighborhoods::common_neighborhood_bruteforce;

#[test]
fn certificates_for_all_target_fields() {
    for (p, k) in [(5, 1), (7, 1), (11, 1), (13, 1), (5, 2), (7, 2)] {
        let env = make_env(p, k).unwrap();
        for mode in [BuildMode::Fast, BuildMode::Certified] {
            let cert = build_k46(&env, mode).unwrap();
            let check = verify_certificate(env.gc(), &cert);
            assert!(check.ok, "q = {}: {:?}", env.q(), check.violations);
        }
    }
}

#[test]
fn structural_lemmas_q13() {
    let env = make_env(13, 1).unwrap();
    let r = special_set_report(&env).unwrap();
    assert_eq!(r.size, 2 * 13 + 1 - 1);
    assert!(r.holds(env.e_q()));
    assert!(bijection_check(&env).unwrap());
    assert!(frobenius_identity_check(&env).unwrap());
    assert!(third_root_exclusion_check(&env));
    for d in s4_nonrational(&env) {
        assert!(square_transfer(&env, d).unwrap());
    }
}

#[test]
fn certificate_right_side_is_full_neighbourhood_q7() {
    let env = make_env(7, 1).unwrap();
    let cert = build_k46(&env, BuildMode::Fast).unwrap();
    let mut right = cert.right.clone();
    right.sort_by_key(|v| env.gc().vertex_index(v));
    assert_eq!(common_neighborhood_bruteforce(env.gc(), &cert.left), right);
}
