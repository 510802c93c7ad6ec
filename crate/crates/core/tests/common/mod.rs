#![allow(dead_code)]

use std::path::PathBuf;

use lestrade::Runner;

pub const BOOKS: [&str; 5] = ["rewriting", "implicit", "russell", "logic", "extension"];

/// Lines each book's setup adds to the log before the transcript proper.
pub fn prelude_blocks(book: &str) -> usize {
    match book {
        "extension" => 1,
        _ => 0,
    }
}

pub fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

pub fn source(book: &str) -> String {
    fixture(&format!("{book}.lti"))
}

/// Runs a book in a fresh runner, running its prerequisites first.
pub fn run_book(book: &str) -> (Runner, String) {
    let mut r = Runner::new(std::env::temp_dir());
    let log = run_book_in(&mut r, book);
    (r, log)
}

pub fn run_book_in(r: &mut Runner, book: &str) -> String {
    run_text_in(r, book, &source(book))
}

/// Runs `text` as the named book, running its prerequisites first.
pub fn run_text_in(r: &mut Runner, book: &str, text: &str) -> String {
    if book == "extension" && !r.session.has_theory("logic") {
        r.run_source("logic", "logiclog", &source("logic"));
    }
    r.run_source(book, &format!("{book}log"), text)
}

/// The one transcript line the current parser rejects: `type` closes the
/// argument list, leaving `: type` unread.
pub const POW_LINE: &str = "construct Pow tau type :  type";

fn is_banner(b: &str) -> bool {
    b.trim() == "Inspector Lestrade says:"
        || ["Welcome", "Done reading", "type lines or type quit", "Bye!"]
            .iter()
            .any(|k| b.contains(k))
}

/// The `>>` response blocks of a log, prefixes removed, banners dropped.
pub fn blocks(log: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur: Vec<&str> = Vec::new();
    for line in log.lines().chain(std::iter::once("")) {
        if let Some(rest) = line.strip_prefix(">>") {
            cur.push(rest);
        } else if !cur.is_empty() {
            let b = cur.join(" ");
            if !is_banner(&b) {
                out.push(b);
            }
            cur.clear();
        }
    }
    out
}

/// Token stream of a block, ignoring whitespace and move annotations.
pub fn tokens(block: &str) -> Vec<String> {
    let mut toks: Vec<String> = Vec::new();
    let mut cur = String::new();
    let word = |c: char| c.is_ascii_alphanumeric() || c == '_';
    let single = |c: char| ",:()[]{}".contains(c);
    for c in block.chars() {
        let joins = match cur.chars().last() {
            None => false,
            Some(p) => !single(p) && !single(c) && !c.is_whitespace() && word(p) == word(c),
        };
        if !joins && !cur.is_empty() {
            toks.push(std::mem::take(&mut cur));
        }
        if !c.is_whitespace() {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        toks.push(cur);
    }
    strip_moves(toks)
}

fn strip_moves(toks: Vec<String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        if toks[i] == "{" && toks.get(i + 1).map(String::as_str) == Some("move") {
            while i < toks.len() && toks[i] != "}" {
                i += 1;
            }
            i += 1;
            continue;
        }
        out.push(toks[i].clone());
        i += 1;
    }
    out
}

pub fn expected_blocks(book: &str) -> Vec<String> {
    blocks(&fixture(&format!("{book}.expected")))
}

/// Our response blocks with any setup responses removed.
pub fn our_blocks(book: &str, log: &str) -> Vec<String> {
    let got = blocks(log);
    got.get(prelude_blocks(book)..).unwrap_or(&[]).to_vec()
}

/// Number of leading transcript blocks reproduced exactly.
pub fn matching_prefix(want: &[String], got: &[String]) -> usize {
    want.iter().zip(got).take_while(|(w, g)| tokens(w) == tokens(g)).count()
}

/// First disagreement between the transcript's responses and ours, if any.
pub fn golden_mismatch(book: &str, log: &str) -> Option<String> {
    let want = expected_blocks(book);
    let got = our_blocks(book, log);
    let i = matching_prefix(&want, &got);
    match (want.get(i), got.get(i)) {
        (None, None) => None,
        (Some(w), None) => Some(format!("block {i}: missing, expected `{w}`")),
        (None, Some(g)) => Some(format!("extra block {i}: `{g}`")),
        (Some(w), Some(g)) => Some(format!("block {i}:\n  expected `{w}`\n  got      `{g}`")),
    }
}

pub mod props;
pub mod criteria;
