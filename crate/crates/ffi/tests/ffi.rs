use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use plab_ffi::*;

fn necklace(perm: &str) -> *mut PlabNecklace {
    let c = CString::new(perm).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { plab_necklace_from_permutation(c.as_ptr(), &mut out) };
    assert_eq!(status, PlabStatus::Ok);
    out
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { plab_string_free(s) };
    text
}

#[test]
fn necklace_accessors() {
    let g = necklace("365124");
    unsafe {
        assert_eq!((plab_necklace_n(g), plab_necklace_k(g), plab_necklace_interior_size(g)), (6, 3, 2));
        let mut first = 0u64;
        assert_eq!(plab_necklace_set(g, 0, &mut first), PlabStatus::Ok);
        assert_eq!(first, 0b1011);
        assert_eq!(plab_necklace_set(g, 6, &mut first), PlabStatus::InvalidInput);
        let mut b = false;
        assert_eq!(plab_necklace_is_prime(g, &mut b), PlabStatus::Ok);
        assert!(b);
        assert_eq!(plab_necklace_is_mutation_friendly(g, &mut b), PlabStatus::Ok);
        assert!(b);
        assert_eq!(plab_necklace_is_very_mutation_friendly(g, &mut b), PlabStatus::Ok);
        assert!(b);
        plab_necklace_free(g);
    }
}

#[test]
fn graph_of_pentagon() {
    let g = necklace("34512");
    unsafe {
        let mut graph = ptr::null_mut();
        assert_eq!(plab_exchange_graph(g, 0, &mut graph), PlabStatus::Ok);
        assert_eq!((plab_graph_order(graph), plab_graph_size(graph)), (5, 5));

        let mut written = 0;
        assert_eq!(plab_graph_edges(graph, ptr::null_mut(), 0, &mut written), PlabStatus::BufferTooSmall);
        assert_eq!(written, 5);
        let mut buf = vec![0usize; 2 * written];
        assert_eq!(plab_graph_edges(graph, buf.as_mut_ptr(), written, &mut written), PlabStatus::Ok);
        let mut degree = [0; 5];
        for v in buf {
            degree[v] += 1;
        }
        assert_eq!(degree, [2; 5]);

        let mut s = ptr::null_mut();
        assert_eq!(plab_graph_catalog_name(graph, &mut s), PlabStatus::Ok);
        assert_eq!(take(s), "D");
        assert_eq!(plab_graph_certificate(graph, &mut s), PlabStatus::Ok);
        assert!(take(s).starts_with("5:5:"));
        assert_eq!(plab_graph_to_json(graph, &mut s), PlabStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(doc["order"], 5);
        plab_graph_free(graph);
        plab_necklace_free(g);
    }
}

#[test]
fn seven_gon_is_named() {
    let g = necklace("3456712");
    unsafe {
        let mut graph = ptr::null_mut();
        assert_eq!(plab_exchange_graph(g, 0, &mut graph), PlabStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(plab_graph_catalog_name(graph, &mut s), PlabStatus::Ok);
        assert_eq!(take(s), "Z6");
        assert_eq!(plab_graph_order(graph), 42);
        plab_graph_free(graph);
        plab_necklace_free(g);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut out = ptr::null_mut();
        let bad = CString::new("3x12").unwrap();
        assert_eq!(plab_necklace_from_permutation(bad.as_ptr(), &mut out), PlabStatus::MalformedPermutation);
        assert!(out.is_null());
        let msg = CStr::from_ptr(plab_last_error()).to_str().unwrap();
        assert!(msg.contains("malformed permutation"), "{msg}");

        let split = CString::new("2143").unwrap();
        assert_eq!(plab_necklace_from_permutation(split.as_ptr(), &mut out), PlabStatus::Disconnected);
        assert_eq!(plab_necklace_from_permutation(ptr::null(), &mut out), PlabStatus::NullArgument);

        let g = necklace("3456712");
        let mut graph = ptr::null_mut();
        assert_eq!(plab_exchange_graph(g, 10, &mut graph), PlabStatus::BudgetExceeded);
        assert!(graph.is_null());
        plab_necklace_free(g);
        plab_necklace_free(ptr::null_mut());
        plab_graph_free(ptr::null_mut());
        plab_string_free(ptr::null_mut());
    }
}

#[test]
fn canonical_rep_and_classify() {
    unsafe {
        let mut s = ptr::null_mut();
        let perm = CString::new("312").unwrap();
        assert_eq!(plab_canonical_representative(perm.as_ptr(), &mut s), PlabStatus::Ok);
        assert_eq!(take(s), "231");
        assert_eq!(plab_classify_json(2, 1, &mut s), PlabStatus::Ok);
        let rows: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(rows.as_array().unwrap().len(), 2);
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/plab.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() > 15);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

// Compiles a small C program against the header and shared library.
#[test]
fn c_program_links_and_runs() {
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libplab_ffi.so");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or shared library at {}", lib.display());
        return;
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ffi-smoke");
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "plab.h"
int main(void) {
    PlabNecklace *g = NULL;
    PlabGraph *x = NULL;
    char *name = NULL;
    if (plab_necklace_from_permutation("38762145", &g) != PLAB_STATUS_OK) return 1;
    if (plab_exchange_graph(g, 0, &x) != PLAB_STATUS_OK) return 2;
    if (plab_graph_catalog_name(x, &name) != PLAB_STATUS_OK || name == NULL) return 3;
    printf("%zu %zu %s\n", plab_graph_order(x), plab_graph_size(x), name);
    plab_string_free(name);
    plab_graph_free(x);
    plab_necklace_free(g);
    if (plab_necklace_from_permutation("2143", &g) != PLAB_STATUS_DISCONNECTED) return 4;
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg("-L")
        .arg(&profile_dir)
        .arg("-lplab_ffi")
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&exe).env("LD_LIBRARY_PATH", &profile_dir).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    let line = String::from_utf8(run.stdout).unwrap();
    assert_eq!(line.split_whitespace().count(), 3, "{line}");
}
