//! Compiles a small C program against the generated header and the static
//! library. Skipped when no C compiler or static library is available.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "sl3_maass.h"

int main(void) {
    Sl3Params *p = NULL;
    if (sl3_params_new(-19.06739, 19.06739, 0.0, &p) != SL3_STATUS_OK) return 1;
    Sl3Whittaker w;
    if (sl3_whittaker(p, 0.3, 0.6, SL3_ALGORITHM_AUTO, &w) != SL3_STATUS_OK) return 2;
    if (!(w.rel_error < 1e-9) || w.algorithm != 3) return 3;
    if (sl3_whittaker(p, -1.0, 0.6, SL3_ALGORITHM_STADE, &w) != SL3_STATUS_DOMAIN) return 4;
    if (sl3_last_error()[0] == '\0') return 5;
    sl3_params_free(p);
    printf("ok\n");
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libsl3_maass_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler not available");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "smoke program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
