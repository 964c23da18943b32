use std::ffi::{CStr, CString};
use std::ptr;

use gridfloer_ffi::*;

fn last_error() -> String {
    let p = gf_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn builtin_trefoil_report() {
    unsafe {
        let name = CString::new("trefoil").unwrap();
        let mut grid = ptr::null_mut();
        assert_eq!(gf_grid_builtin(name.as_ptr(), &mut grid), GfStatus::Ok);
        assert_eq!(gf_grid_size(grid), 5);
        assert_eq!(gf_grid_component_count(grid), 1);

        let mut report = ptr::null_mut();
        assert_eq!(gf_compute_report(grid, 1, &mut report), GfStatus::Ok);
        assert_eq!(gf_report_genus(report), 1);
        assert_eq!(gf_report_fibered(report), 1);
        assert_eq!(gf_report_hfk_total(report), 3);
        assert_eq!(gf_report_top_dimension(report), 1);
        assert_eq!(gf_report_alexander_coeff(report, 1), 1);
        assert_eq!(gf_report_alexander_coeff(report, 0), -1);
        assert_eq!(gf_report_alexander_coeff(report, 5), 0);

        let json = gf_report_to_json(report);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        gf_string_free(json);
        let expected = gridfloer::full_report(&gridfloer::builtin("trefoil").unwrap())
            .unwrap()
            .to_json();
        assert_eq!(text, expected);

        gf_report_free(report);
        gf_grid_free(grid);
    }
}

#[test]
fn grid_from_arrays_and_text() {
    unsafe {
        let o = [1usize, 0];
        let x = [0usize, 1];
        let mut grid = ptr::null_mut();
        assert_eq!(
            gf_grid_new(2, o.as_ptr(), x.as_ptr(), &mut grid),
            GfStatus::Ok
        );
        let mut report = ptr::null_mut();
        assert_eq!(gf_compute_report(grid, 0, &mut report), GfStatus::Ok);
        assert_eq!(gf_report_genus(report), 0);
        gf_report_free(report);
        gf_grid_free(grid);

        let text = CString::new("grid 6\nO 3 5 0 2 1 4\nX 0 1 4 5 3 2\n").unwrap();
        assert_eq!(gf_grid_parse(text.as_ptr(), &mut grid), GfStatus::Ok);
        assert_eq!(gf_compute_report(grid, 2, &mut report), GfStatus::Ok);
        assert_eq!(gf_report_hfk_total(report), 5);
        assert_eq!(gf_report_fibered(report), 1);
        gf_report_free(report);
        gf_grid_free(grid);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut grid = ptr::null_mut();
        let o = [0usize, 1];
        assert_eq!(
            gf_grid_new(2, o.as_ptr(), o.as_ptr(), &mut grid),
            GfStatus::InvalidGrid
        );
        assert!(grid.is_null());
        assert!(!last_error().is_empty());

        let bad = CString::new("grid 3\nO 0 1 q\nX 1 2 0\n").unwrap();
        assert_eq!(gf_grid_parse(bad.as_ptr(), &mut grid), GfStatus::Parse);
        assert!(last_error().contains("line 2"));

        let name = CString::new("no_such_knot").unwrap();
        assert_eq!(
            gf_grid_builtin(name.as_ptr(), &mut grid),
            GfStatus::UnknownName
        );
        assert_eq!(
            gf_grid_builtin(ptr::null(), &mut grid),
            GfStatus::NullPointer
        );

        let bytes = [0xffu8, 0];
        assert_eq!(
            gf_grid_parse(bytes.as_ptr().cast(), &mut grid),
            GfStatus::InvalidUtf8
        );

        let link = CString::new("grid 4\nO 1 0 3 2\nX 0 1 2 3\n").unwrap();
        assert_eq!(gf_grid_parse(link.as_ptr(), &mut grid), GfStatus::Ok);
        assert_eq!(gf_grid_component_count(grid), 2);
        let mut report = ptr::null_mut();
        assert_eq!(gf_compute_report(grid, 1, &mut report), GfStatus::NotAKnot);
        assert!(report.is_null());
        gf_grid_free(grid);

        assert_eq!(
            gf_compute_report(ptr::null(), 1, &mut report),
            GfStatus::NullPointer
        );
        assert_eq!(gf_report_genus(ptr::null()), -1);
        assert!(gf_report_to_json(ptr::null()).is_null());
        gf_grid_free(ptr::null_mut());
        gf_report_free(ptr::null_mut());
        gf_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_generated() {
    let header = include_str!("../include/gridfloer.h");
    for symbol in [
        "gf_grid_new",
        "gf_compute_report",
        "gf_last_error_message",
        "GF_STATUS_NOT_A_KNOT",
    ] {
        assert!(header.contains(symbol), "{symbol}");
    }
}
