use std::ffi::{CStr, CString};
use std::ptr;

use silting_ffi::*;

fn algebra(p: usize, q: usize) -> *mut SiltAlgebra {
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { silt_algebra_new(p, q, &mut a) }, SiltStatus::Ok);
    a
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(silt_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn parse(json: &str) -> (SiltStatus, *mut SiltComplex) {
    let s = CString::new(json).unwrap();
    let mut c = ptr::null_mut();
    let status = unsafe { silt_complex_from_json(s.as_ptr(), &mut c) };
    (status, c)
}

#[test]
fn algebra_handle() {
    let a = algebra(2, 1);
    let mut c = [0usize; 4];
    unsafe {
        assert_eq!(silt_algebra_dim(a), 7);
        assert_eq!(silt_algebra_cartan(a, c.as_mut_ptr()), SiltStatus::Ok);
        silt_algebra_free(a);
    }
    assert_eq!(c, [1, 1, 2, 3]);

    let mut bad = ptr::null_mut();
    assert_eq!(
        unsafe { silt_algebra_new(0, 0, &mut bad) },
        SiltStatus::InvalidAlgebra
    );
    assert!(bad.is_null());
    assert!(last_error().contains("semisimple"));
    assert_eq!(unsafe { silt_algebra_dim(ptr::null()) }, 0);
}

#[test]
fn json_round_trip_and_flags() {
    let a = algebra(1, 1);
    let mut x = ptr::null_mut();
    unsafe {
        assert_eq!(silt_complex_regular(a, &mut x), SiltStatus::Ok);
        let s = silt_complex_to_json(x);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        silt_string_free(s);
        let (status, y) = parse(&text);
        assert_eq!(status, SiltStatus::Ok);
        let mut f = SiltFlags::default();
        assert_eq!(silt_complex_flags(y, &mut f), SiltStatus::Ok);
        assert_eq!(
            f,
            SiltFlags {
                presilting: true,
                silting: true,
                tilting: true
            }
        );
        let mut d = 0;
        assert_eq!(silt_hom_dim(x, y, 0, &mut d), SiltStatus::Ok);
        assert_eq!(d, 5);
        let (mut lo, mut hi) = (1, 1);
        assert_eq!(silt_complex_degrees(y, &mut lo, &mut hi), SiltStatus::Ok);
        assert_eq!((lo, hi), (0, 0));
        silt_complex_free(y);
        silt_complex_free(x);
        silt_algebra_free(a);
    }
}

#[test]
fn error_codes() {
    assert_eq!(parse("{").0, SiltStatus::MalformedJson);
    let d2 = r#"{"algebra":{"p":1,"q":1},"terms":{"-2":[0,1],"-1":[1,0],"0":[0,1]},
        "diff":{"-2":[[[0,0,0,1,0]]],"-1":[[[0,0,1,0,0]]]}}"#;
    assert_eq!(parse(d2).0, SiltStatus::NotAComplex);
    let shape =
        r#"{"algebra":{"p":1,"q":1},"terms":{"-1":[1,0],"0":[0,2]},"diff":{"-1":[[[0,0,1,0,0]]]}}"#;
    assert_eq!(parse(shape).0, SiltStatus::BlockShape);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { silt_complex_from_json(ptr::null(), &mut out) },
        SiltStatus::NullPointer
    );
    assert_eq!(
        unsafe { silt_complex_minimize(ptr::null(), &mut out) },
        SiltStatus::NullPointer
    );

    let a = algebra(2, 1);
    let b = algebra(1, 2);
    let (mut x, mut y) = (ptr::null_mut(), ptr::null_mut());
    let mut d = 0;
    unsafe {
        assert_eq!(silt_complex_projective(a, 1, 0, &mut x), SiltStatus::Ok);
        assert_eq!(silt_complex_projective(b, 2, 0, &mut y), SiltStatus::Ok);
        assert_eq!(silt_hom_dim(x, y, 0, &mut d), SiltStatus::AlgebraMismatch);
        assert_eq!(
            silt_complex_projective(a, 3, 0, &mut out),
            SiltStatus::Failed
        );
        let mut flagged = ptr::null_mut();
        let mut m = 0;
        // P_1 alone is not tilting
        assert_eq!(
            silt_reduce(x, 4, &mut flagged, &mut m),
            SiltStatus::NotTilting
        );
        assert!(flagged.is_null());
        silt_complex_free(x);
        silt_complex_free(y);
        silt_algebra_free(a);
        silt_algebra_free(b);
    }
}

#[test]
fn nakayama_and_reduce() {
    let a = algebra(2, 1);
    let (mut x, mut nu, mut back, mut r) = (
        ptr::null_mut(),
        ptr::null_mut(),
        ptr::null_mut(),
        ptr::null_mut(),
    );
    let mut m = 0;
    let mut d = 0;
    unsafe {
        assert_eq!(silt_complex_regular(a, &mut x), SiltStatus::Ok);
        assert_eq!(silt_nakayama(x, true, &mut nu), SiltStatus::Ok);
        assert_eq!(silt_nakayama(nu, false, &mut back), SiltStatus::Ok);
        assert_eq!(silt_hom_dim(back, x, 0, &mut d), SiltStatus::Ok);
        assert_eq!(d, 7);
        assert_eq!(silt_reduce(nu, 4, &mut r, &mut m), SiltStatus::Ok);
        let (mut lo, mut hi) = (0, 0);
        assert_eq!(silt_complex_degrees(r, &mut lo, &mut hi), SiltStatus::Ok);
        assert!(hi - lo <= 1);
        for c in [x, nu, back, r] {
            silt_complex_free(c);
        }
        silt_algebra_free(a);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/silting.h");
    let src = include_str!("../src/lib.rs");
    let exported: Vec<&str> = src
        .lines()
        .filter_map(|l| {
            l.trim()
                .strip_prefix("pub unsafe extern \"C\" fn ")
                .or_else(|| l.trim().strip_prefix("pub extern \"C\" fn "))
        })
        .map(|l| l.split('(').next().unwrap())
        .collect();
    assert!(exported.len() >= 14);
    for f in exported {
        assert!(
            header.contains(&format!("{f}(")),
            "{f} missing from the header"
        );
    }
}

/// Compiles `tests/c/smoke.c` against the static library and runs it.
#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    // `cargo test` leaves the archive in deps/, `cargo build` uplifts it
    let lib = [profile_dir.join("deps"), profile_dir.to_path_buf()]
        .into_iter()
        .map(|d| d.join("libsilting_ffi.a"))
        .find(|l| l.exists())
        .expect("libsilting_ffi.a not built");
    let dir = env!("CARGO_MANIFEST_DIR");
    let tmp = tempfile::tempdir().unwrap();
    let bin = tmp.path().join("smoke");
    let status = std::process::Command::new(cc)
        .args([
            &format!("{dir}/tests/c/smoke.c"),
            "-I",
            &format!("{dir}/include"),
            "-o",
        ])
        .arg(&bin)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success());
    let out = std::process::Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "dim 7 cartan 1 1 2 3\nflags 1 1 1\nreduce m 1 hom 7\nmalformed 1 null\njson ok\n"
    );
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if std::process::Command::new(cc)
            .arg("--version")
            .output()
            .is_ok()
        {
            return Ok(cc);
        }
    }
    Err(())
}
