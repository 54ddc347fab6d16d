use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use fsig_ffi::*;

fn last_error() -> String {
    let p = fsig_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn bundled(name: &str) -> *mut FsigFixture {
    let name = CString::new(name).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { fsig_fixture_bundled(name.as_ptr(), &mut h) }, FsigStatus::Ok);
    h
}

#[test]
fn estimates_through_the_abi() {
    let h = bundled("a1");
    let mut s = FsigSample::default();
    unsafe {
        assert_eq!(fsig_signature_estimate(h, 2, false, &mut s), FsigStatus::Ok);
        assert_eq!(s, FsigSample { e: 2, q: 9, length: 41, num: 41, den: 81 });
        let mut d = 0usize;
        assert_eq!(fsig_dimension(h, &mut d), FsigStatus::Ok);
        assert_eq!(d, 2);
        let mut pure = false;
        assert_eq!(fsig_f_pure(h, &mut pure), FsigStatus::Ok);
        assert!(pure);
        // with Δ = div(z)/2 the estimate drops below the plain one
        assert_eq!(fsig_signature_estimate(h, 1, true, &mut s), FsigStatus::Ok);
        assert!(s.num * 9 < 5 * s.den);
        fsig_fixture_free(h);
    }
}

#[test]
fn parse_and_report_json() {
    let text = CString::new("name = plane\np = 5\nvars = [x, y]\nideal = []\n").unwrap();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(fsig_fixture_parse(text.as_ptr(), &mut h), FsigStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(fsig_report_json(h, 2, false, &mut json), FsigStatus::Ok);
        let body = CStr::from_ptr(json).to_str().unwrap().to_owned();
        fsig_string_free(json);
        let report = fsig_core::io::from_json(&body).unwrap();
        assert_eq!(report.fixture, "plane");
        assert_eq!(report.tables[0].samples[1].length, 625);
        fsig_fixture_free(h);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let bad = CString::new("p = 3\nvars = [x]\nideal = [x^]\n").unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(fsig_fixture_parse(bad.as_ptr(), &mut h), FsigStatus::Parse);
        assert!(h.is_null());
        assert!(last_error().contains("3:"), "{}", last_error());

        assert_eq!(fsig_fixture_parse(ptr::null(), &mut h), FsigStatus::NullPointer);
        let mut s = FsigSample::default();
        assert_eq!(fsig_signature_estimate(ptr::null(), 1, false, &mut s), FsigStatus::NullPointer);

        let name = CString::new("nope").unwrap();
        assert_eq!(fsig_fixture_bundled(name.as_ptr(), &mut h), FsigStatus::Usage);

        // x lies in the ideal, so the divisor is degenerate
        let degenerate = CString::new("p = 3\nvars = [x, y]\nideal = [x]\ndivisor = [(1/2, x)]\n").unwrap();
        match fsig_fixture_parse(degenerate.as_ptr(), &mut h) {
            FsigStatus::Ok => {
                assert_eq!(fsig_signature_estimate(h, 1, true, &mut s), FsigStatus::DegenerateDivisor);
                fsig_fixture_free(h);
            }
            status => assert_eq!(status, FsigStatus::DegenerateDivisor, "{}", last_error()),
        }

        let h = bundled("regular");
        assert_eq!(fsig_signature_estimate(h, 40, false, &mut s), FsigStatus::Resource, "{}", last_error());
        // a successful call clears the message
        assert_eq!(fsig_signature_estimate(h, 1, false, &mut s), FsigStatus::Ok);
        assert!(fsig_last_error().is_null());
        fsig_fixture_free(h);
        fsig_fixture_free(ptr::null_mut());
        fsig_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/fsig.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["fsig_fixture_parse", "fsig_signature_estimate", "fsig_last_error", "FSIG_STATUS_PANIC"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        "#include \"fsig.h\"\nint main(void) { FsigSample s = {0}; FsigFixture *f = 0;\n\
         return fsig_signature_estimate(f, 1, false, &s) == FSIG_STATUS_OK; }\n",
    )
    .unwrap();
    let include = header.parent().unwrap();
    match Command::new("cc").arg("-fsyntax-only").arg("-std=c99").arg("-I").arg(include).arg(&src).output() {
        Ok(out) => assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr)),
        Err(_) => eprintln!("no C compiler found; header syntax not checked"),
    }
}
