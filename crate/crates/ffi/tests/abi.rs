use jetgeom_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn last_error() -> String {
    let p = jg_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    jg_string_free(p);
    s
}

#[test]
fn dims_match_the_worked_example() {
    let mut d = JgDims::default();
    assert_eq!(unsafe { jg_dims(3, 1, 2, 2, &mut d) }, JgStatus::Ok);
    assert_eq!((d.isotropic, d.polar, d.sharp_target), (7, 4, 3));
    assert_eq!(unsafe { jg_dims(3, 1, 2, 4, &mut d) }, JgStatus::InvalidInput);
    assert!(last_error().contains("s = 4"));
    assert_eq!(unsafe { jg_dims(0, 1, 2, 1, &mut d) }, JgStatus::InvalidContext);
    assert_eq!(unsafe { jg_dims(3, 1, 2, 2, ptr::null_mut()) }, JgStatus::NullArgument);
}

#[test]
fn subspace_round_trip_and_polar_report() {
    let text = CString::new(r#"{"n":3,"m":1,"k":2,"basis":[[1,0,0,0,0,0],[0,1,0,0,0,0]]}"#).unwrap();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(jg_subspace_from_json(text.as_ptr(), &mut h), JgStatus::Ok);
        assert!(jg_last_error_message().is_null());
        let mut dim = 0usize;
        assert_eq!(jg_subspace_dim(h, &mut dim), JgStatus::Ok);
        assert_eq!(dim, 2);
        let mut integral = false;
        assert_eq!(jg_subspace_is_integral(h, &mut integral), JgStatus::Ok);
        assert!(integral);

        let mut s = ptr::null_mut();
        assert_eq!(jg_subspace_to_json(h, &mut s), JgStatus::Ok);
        let round = CString::new(take_string(s)).unwrap();
        let mut h2 = ptr::null_mut();
        assert_eq!(jg_subspace_from_json(round.as_ptr(), &mut h2), JgStatus::Ok);
        jg_subspace_free(h2);

        let mut s = ptr::null_mut();
        assert_eq!(jg_polar_report_json(h, &mut s), JgStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(report["polar_dim"]["rank"], 4);
        assert_eq!(report["sharp_rank"]["rank"], 3);
        jg_subspace_free(h);
    }
}

#[test]
fn malformed_subspaces_report_location() {
    let text = CString::new(r#"{"n":3,"m":1,"k":2,"basis":[[1,0,0,"z",0,0]]}"#).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { jg_subspace_from_json(text.as_ptr(), &mut h) }, JgStatus::InvalidInput);
    assert!(h.is_null());
    assert!(last_error().contains("basis[0][3]"));
    assert_eq!(unsafe { jg_subspace_from_json(ptr::null(), &mut h) }, JgStatus::NullArgument);
}

#[test]
fn random_integral_elements_are_integral() {
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(jg_subspace_random_integral(3, 2, 3, 2, 11, &mut h), JgStatus::Ok);
        let mut integral = false;
        assert_eq!(jg_subspace_is_integral(h, &mut integral), JgStatus::Ok);
        assert!(integral);
        jg_subspace_free(h);
        assert_eq!(jg_subspace_random_integral(3, 1, 0, 1, 1, &mut h), JgStatus::InvalidContext);
    }
}

#[test]
fn polar_report_rejects_first_order() {
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(jg_subspace_random_integral(2, 1, 1, 1, 1, &mut h), JgStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(jg_polar_report_json(h, &mut s), JgStatus::Unsupported);
        assert!(s.is_null());
        jg_subspace_free(h);
    }
}

#[test]
fn membership_through_handles() {
    let control = CString::new("u_xxx + u_yyy").unwrap();
    let bad = CString::new("u_xxy + ").unwrap();
    // the line (1,1) + [3,5,2] in the ∂xx, ∂xy, ∂yy directions
    let line = CString::new(r#"{"n":2,"m":1,"k":3,"basis":[[1,1,"3/2",5,1]]}"#).unwrap();
    unsafe {
        let mut pde = ptr::null_mut();
        assert_eq!(jg_pde_parse(bad.as_ptr(), &mut pde), JgStatus::Parse);
        assert!(last_error().contains("column"));
        assert_eq!(jg_pde_parse(control.as_ptr(), &mut pde), JgStatus::Ok);
        let mut l = ptr::null_mut();
        assert_eq!(jg_subspace_from_json(line.as_ptr(), &mut l), JgStatus::Ok);
        let mut m = JgMembership::NotMember;
        assert_eq!(jg_pde_membership(pde, l, &mut m), JgStatus::Ok);
        assert_eq!(m, JgMembership::Member);
        jg_subspace_free(l);
        jg_pde_free(pde);
    }
}

#[test]
fn ma_example_is_deterministic() {
    unsafe {
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(jg_ma_example_json(4, &mut a), JgStatus::Ok);
        assert_eq!(jg_ma_example_json(4, &mut b), JgStatus::Ok);
        let (a, b) = (take_string(a), take_string(b));
        assert_eq!(a, b);
        assert!(a.contains("NOT_CONTACT_EQUIVALENT"));
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/jetgeom.h")).unwrap();
    for name in [
        "JgStatus",
        "JG_STATUS_OK",
        "typedef struct JgSubspace JgSubspace",
        "jg_subspace_from_json",
        "jg_polar_report_json",
        "jg_pde_membership",
        "jg_last_error_message",
        "jg_string_free",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
