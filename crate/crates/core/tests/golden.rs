mod common;

use common::*;

fn check(book: &str) {
    let (_, log) = run_book(book);
    if let Some(m) = golden_mismatch(book, &log) {
        panic!("{book}: {m}");
    }
}

#[test]
fn rewriting_book() {
    check("rewriting");
}

#[test]
fn implicit_book() {
    check("implicit");
}

#[test]
fn russell_book() {
    check("russell");
}

#[test]
fn logic_book() {
    check("logic");
}

#[test]
fn extension_book_halts_at_pow() {
    let (_, log) = run_book("extension");
    let want = expected_blocks("extension");
    let got = our_blocks("extension", &log);
    let n = matching_prefix(&want, &got);
    // The warning comes first, the declaration still goes through, then
    // the batch stops.
    assert!(want[n].contains("Pow:"), "stopped early at block {n}: {}", want[n]);
    assert!(got[n].contains("Construction line not completely read:  :"));
    assert_eq!(tokens(&got[n + 1]), tokens(&want[n]));
    assert_eq!(got.len(), n + 2);
}

#[test]
fn extension_book_without_trailing_sort() {
    let text = source("extension").replace(POW_LINE, "construct Pow tau : type");
    let mut r = lestrade::Runner::new(std::env::temp_dir());
    let log = run_text_in(&mut r, "extension", &text);
    if let Some(m) = golden_mismatch("extension", &log) {
        panic!("extension: {m}");
    }
}
