//! Whole-corpus property suites. Each returns a summary on success.

use std::collections::HashSet;

use lestrade::syntax::tokenize;
use lestrade::term::{deent, reindex_sort};
use lestrade::{Argument, Entity, EntitySort, Entry, Runner, Session, Sort};

use super::{blocks, run_book_in, run_text_in, source, tokens, BOOKS, POW_LINE};

/// Book text as replayed by the property suites. The extension book gets
/// its one rejected line repaired so the rest of it is exercised.
pub fn replay_text(book: &str) -> String {
    let text = source(book);
    if book == "extension" {
        text.replace(POW_LINE, "construct Pow tau : type")
    } else {
        text
    }
}

fn closed_ent(e: &Entity) -> bool {
    match e {
        Entity::Atom(id) => id.ns == 0,
        Entity::App(h, m) => h.ns == 0 && m.iter().all(closed_arg),
        _ => false,
    }
}

fn closed_arg(a: &Argument) -> bool {
    match a {
        Argument::Ent(e) => closed_ent(e),
        Argument::Abst(id) => id.ns == 0,
        Argument::Lambda(_) => false,
    }
}

fn walk_ent(e: &Entity, out: &mut Vec<Entity>) {
    if let Entity::App(_, m) = e {
        if closed_ent(e) {
            out.push(e.clone());
        }
        for a in m {
            walk_arg(a, out);
        }
    }
}

fn walk_arg(a: &Argument, out: &mut Vec<Entity>) {
    match a {
        Argument::Ent(e) => walk_ent(e, out),
        Argument::Lambda(f) => f.iter().for_each(|x| walk_entry(x, out)),
        Argument::Abst(_) => {}
    }
}

fn walk_sort(s: &Sort, out: &mut Vec<Entity>) {
    match s {
        Sort::Ent(EntitySort::That(e) | EntitySort::In(e)) => walk_ent(e, out),
        Sort::Ent(_) => {}
        Sort::Abst(f) => f.iter().for_each(|x| walk_entry(x, out)),
    }
}

fn walk_entry(x: &Entry, out: &mut Vec<Entity>) {
    walk_arg(&x.arg, out);
    walk_sort(&x.sort, out);
}

/// Closed application terms mentioned anywhere in the current moves.
pub fn application_terms(s: &Session) -> Vec<Entity> {
    let mut out = Vec::new();
    for d in 0..s.depth() {
        for x in s.move_at(d) {
            walk_entry(x, &mut out);
        }
    }
    out
}

/// Define bodies recorded in the current moves.
pub fn define_bodies(s: &Session) -> Vec<Entity> {
    let mut out = Vec::new();
    for d in 0..s.depth() {
        for x in s.move_at(d) {
            if let (0, Sort::Abst(f)) = (x.age, &x.sort) {
                if let Some(Entry { arg: Argument::Ent(b), .. }) = f.last() {
                    out.push(b.clone());
                }
            }
        }
    }
    out
}

/// Replays a book line by line, handing the session to `visit` after each
/// line that executed cleanly.
pub fn replay(book: &str, mut visit: impl FnMut(&Session)) {
    let mut r = Runner::new(std::env::temp_dir());
    if book == "extension" {
        run_book_in(&mut r, "logic");
    }
    r.session.clear_all();
    r.session.breakout = false;
    for line in replay_text(book).lines() {
        if line == "quit" || r.session.breakout {
            break;
        }
        r.readline(line);
        if !r.session.breakout {
            visit(&r.session);
        }
    }
}

fn for_new_terms(
    get: fn(&Session) -> Vec<Entity>,
    mut check: impl FnMut(&mut Session, &Entity) -> Result<bool, String>,
) -> Result<(usize, usize), String> {
    let (mut seen, mut hits) = (0, 0);
    for book in BOOKS {
        let mut done: HashSet<Entity> = HashSet::new();
        let mut err = None;
        replay(book, |s| {
            if err.is_some() {
                return;
            }
            let fresh: Vec<Entity> = get(s).into_iter().filter(|t| done.insert(t.clone())).collect();
            if fresh.is_empty() {
                return;
            }
            let mut c = s.clone();
            for t in &fresh {
                seen += 1;
                match check(&mut c, t) {
                    Ok(true) => hits += 1,
                    Ok(false) => {}
                    Err(e) => {
                        err = Some(format!("{book}: {e}"));
                        return;
                    }
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok((seen, hits))
}

fn same_sort(c: &mut Session, a: &Entity, b: &Entity) -> Result<(), String> {
    let errors = c.errors;
    let (ta, tb) = (c.entitytype(a), c.entitytype(b));
    if c.errors != errors || !c.equaltypes(false, &Sort::Ent(ta.clone()), &Sort::Ent(tb.clone())) {
        return Err(format!(
            "{} : {}  but  {} : {}",
            c.display2(a),
            c.display1(&ta),
            c.display2(b),
            c.display1(&tb)
        ));
    }
    Ok(())
}

/// (a) Expanding a definition or rewriting once keeps the sort.
pub fn sort_preservation() -> Result<String, String> {
    let (seen, hits) = for_new_terms(application_terms, |c, t| {
        let mut moved = false;
        let e = c.expand(t);
        if &e != t {
            same_sort(c, t, &e).map_err(|m| format!("expansion: {m}"))?;
            moved = true;
        }
        let r = c.rewriteonce(t);
        if &r != t {
            same_sort(c, t, &r).map_err(|m| format!("rewrite: {m}"))?;
            moved = true;
        }
        Ok(moved)
    })?;
    Ok(format!("{seen} application terms, {hits} expanded or rewritten"))
}

/// (b) Rewriting a define body to normal form twice changes nothing.
pub fn rewrite_idempotence() -> Result<String, String> {
    let (seen, _) = for_new_terms(define_bodies, |c, b| {
        let once = c.fullrewrite(b);
        let twice = c.fullrewrite(&once);
        if once != twice {
            return Err(format!("{} -> {}", c.display2(&once), c.display2(&twice)));
        }
        Ok(true)
    })?;
    Ok(format!("{seen} define bodies"))
}

/// (c) Printing a fully explicit term and parsing it back is the identity.
pub fn print_parse_round_trip() -> Result<String, String> {
    let (seen, hits) = for_new_terms(application_terms, |c, t| {
        c.show_implicit = false;
        let short = c.display2(t);
        c.show_implicit = true;
        let full = c.display2(t);
        c.show_implicit = false;
        if short != full {
            return Ok(false);
        }
        let toks = tokenize(&full);
        let back = deent(&c.getterms(&toks));
        if &back != t {
            return Err(format!("`{full}` parsed as {back:?}"));
        }
        Ok(true)
    })?;
    Ok(format!("{hits} of {seen} terms fully explicit, all round trip"))
}

/// (d) Renaming binders twice gives an alpha-equal frame.
pub fn alpha_invariance() -> Result<String, String> {
    let mut seen = 0;
    for book in BOOKS {
        let mut done: HashSet<Vec<Entry>> = HashSet::new();
        let mut err = None;
        replay(book, |s| {
            if err.is_some() {
                return;
            }
            let mut c = s.clone();
            for d in 0..s.depth() {
                for x in s.move_at(d) {
                    let Sort::Abst(f) = &x.sort else { continue };
                    if !done.insert(f.clone()) {
                        continue;
                    }
                    seen += 1;
                    let once = c.renamespace(f);
                    let twice = c.renamespace(&once);
                    let (a, b) = (Sort::Abst(f.clone()), Sort::Abst(twice));
                    if !c.equaltypes(true, &a, &b) || reindex_sort(&a) != reindex_sort(&b) {
                        err = Some(format!("{book}: {}", c.display6(&a)));
                        return;
                    }
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(format!("{seen} recorded frames"))
}

fn token_blocks(log: &str) -> Vec<Vec<String>> {
    blocks(log).iter().map(|b| tokens(b)).collect()
}

/// (e) The logic book does not depend on the rewriting or implicit features.
pub fn feature_transparency() -> Result<String, String> {
    let mut logs = Vec::new();
    for mode in ["basic", "explicit", "fullversion"] {
        let mut r = Runner::new(std::env::temp_dir());
        let text = format!("{mode}\n{}", source("logic"));
        logs.push((mode, token_blocks(&run_text_in(&mut r, "logic", &text))));
    }
    let (m0, base) = &logs[0];
    for (m, l) in &logs[1..] {
        if l != base {
            let i = l.iter().zip(base).take_while(|(a, b)| a == b).count();
            return Err(format!("{m} and {m0} differ at block {i}"));
        }
    }
    Ok(format!("{} blocks identical in all three modes", base.len()))
}

/// (f) Every log runs as a source file and reproduces itself.
pub fn log_self_execution() -> Result<String, String> {
    let mut total = 0;
    for book in BOOKS {
        let mut r = Runner::new(std::env::temp_dir());
        let first = run_text_in(&mut r, book, &replay_text(book));
        let second = run_text_in(&mut r, book, &first);
        let (a, b) = (token_blocks(&first), token_blocks(&second));
        if a != b {
            let i = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
            return Err(format!("{book}: logs differ at block {i} of {}/{}", a.len(), b.len()));
        }
        total += a.len();
    }
    Ok(format!("{total} blocks reproduced"))
}
