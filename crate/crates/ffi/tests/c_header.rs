//! Compile and run a C client against the generated header and static library.

use std::path::PathBuf;
use std::process::Command;

const CLIENT: &str = r#"
#include <stdio.h>
#include <string.h>
#include "galecubic.h"

int main(void) {
    size_t n = 0;
    if (gc_lattice_count(&n) != GC_STATUS_OK || n != 24) return 1;
    GcEquation *eq = NULL, *dual = NULL;
    if (gc_equation_random("rational", 3, &eq) != GC_STATUS_OK) return 2;
    if (gc_equation_gale_dual(eq, &dual) != GC_STATUS_OK) return 3;
    bool zero = false;
    if (gc_equation_composes_to_zero(eq, dual, &zero) != GC_STATUS_OK || !zero) return 4;
    char *json = NULL;
    if (gc_equation_to_json(dual, &json) != GC_STATUS_OK || strstr(json, "\"sign\":-1") == NULL) return 5;
    gc_string_free(json);
    GcInstance *inst = NULL;
    if (gc_instance_parse("{", &inst) == GC_STATUS_OK || gc_last_error() == NULL) return 6;
    gc_equation_free(dual);
    gc_equation_free(eq);
    printf("ok %s\n", gc_version());
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_client_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libgalecubic_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let work = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = work.join("client.c");
    let bin = work.join("client");
    std::fs::write(&src, CLIENT).unwrap();
    let status = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "client exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}

#[test]
fn header_is_valid_cpp() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let status = Command::new("c++")
        .args(["-fsyntax-only", "-x", "c++", "-Wall", "-Werror"])
        .arg(crate_dir.join("include/galecubic.h"))
        .status()
        .expect("a C++ compiler is available");
    assert!(status.success());
}
