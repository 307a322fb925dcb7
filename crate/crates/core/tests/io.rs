mod common;

use common::{front, model, weight};
use nagumo_core::eigensolve::{build_operator, compute_spectrum, Window};
use nagumo_core::io::{border_csv, eigenfunctions_csv, read_profile, spectrum_entries, to_json, ProfileSidecar};
use nagumo_core::spectrum::{default_k_grid, fredholm_border};
use nagumo_core::{FrontCase, Side};

#[test]
fn border_csv_has_one_row_per_k() {
    let m = model(FrontCase::Nd);
    let curve = fredholm_border(&m, FrontCase::Nd, 1.0, 0.5, 0.0, Side::Plus, &default_k_grid());
    let csv = border_csv(&curve);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,re_lambda,im_lambda"));
    assert_eq!(lines.count(), 2001);
}

#[test]
fn spectrum_outputs_are_deterministic() {
    let case = FrontCase::Nn;
    let op = build_operator(front(case), &model(case), weight(case), 0.0).unwrap();
    let a = compute_spectrum(&op, 4, Window::All).unwrap();
    let b = compute_spectrum(&op, 4, Window::All).unwrap();
    assert_eq!(to_json(&spectrum_entries(&a)).unwrap(), to_json(&spectrum_entries(&b)).unwrap());
    let csv = eigenfunctions_csv(&op.x, &a);
    assert_eq!(csv, eigenfunctions_csv(&op.x, &b));
    assert!(csv.starts_with("x,u0_re,u0_im,u1_re,u1_im,u2_re,u2_im,u3_re,u3_im\n"));
    assert_eq!(csv.lines().count(), op.x.len() + 1);
}

#[test]
fn json_ends_with_newline() {
    let s = to_json(&ProfileSidecar::from(front(FrontCase::Nd))).unwrap();
    assert!(s.ends_with("}\n"));
    let back: ProfileSidecar = serde_json::from_str(&s).unwrap();
    assert_eq!(back.case, "Nd");
}

#[test]
fn malformed_profiles_are_rejected() {
    let side = ProfileSidecar::from(front(FrontCase::Nd));
    assert!(read_profile("x,phi\n0,1\n", &side).is_err());
    assert!(read_profile("x,phi,phi_x,phi_xx\n0,1,2\n", &side).is_err());
    assert!(read_profile("x,phi,phi_x,phi_xx\n0,1,2,nan-ish\n", &side).is_err());
    // no x = 0 node
    assert!(read_profile("x,phi,phi_x,phi_xx\n1,0.5,0.1,0.0\n", &side).is_err());
    let bad = ProfileSidecar { case: "Xy".into(), ..side };
    assert!(read_profile("x,phi,phi_x,phi_xx\n0,0.5,0.1,0.0\n", &bad).is_err());
}
