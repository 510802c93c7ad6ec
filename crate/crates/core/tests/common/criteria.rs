//! The acceptance criteria, each as a check returning a one-line summary.

use std::time::{Duration, Instant};

use lestrade::term::atom;
use lestrade::{EntitySort, Runner, Sort};

use super::*;

fn golden(book: &str, log: &str) -> Result<usize, String> {
    match golden_mismatch(book, log) {
        None => Ok(expected_blocks(book).len()),
        Some(m) => Err(format!("{book}: {m}")),
    }
}

/// Our response block declaring `name`, and the transcript's.
fn declaration_blocks(book: &str, log: &str, name: &str) -> Result<(String, String), String> {
    let find = |bs: Vec<String>| {
        bs.into_iter()
            .find(|b| tokens(b).first().map(String::as_str) == Some(name))
            .ok_or_else(|| format!("{book}: no response declaring {name}"))
    };
    Ok((find(our_blocks(book, log))?, find(expected_blocks(book))?))
}

fn same_declarations(book: &str, log: &str, names: &[&str]) -> Result<(), String> {
    for name in names {
        let (ours, theirs) = declaration_blocks(book, log, name)?;
        if tokens(&ours) != tokens(&theirs) {
            return Err(format!("{book}: {name} shown as `{ours}`, expected `{theirs}`"));
        }
    }
    Ok(())
}

fn squash(s: &str) -> String {
    s.split_whitespace().collect()
}

pub fn logic_book() -> Result<String, String> {
    let start = Instant::now();
    let mut r = Runner::new(std::env::temp_dir());
    let logic = run_book_in(&mut r, "logic");
    let ext = run_book_in(&mut r, "extension");
    let took = start.elapsed();
    let n = golden("logic", &logic)?;
    same_declarations("logic", &logic, &["Univimp", "Contrapositive"])?;
    if took > Duration::from_secs(5) {
        return Err(format!("took {took:?}"));
    }
    let m = golden("extension", &ext)?;
    Ok(format!("{} responses match in {took:?}", n + m))
}

pub fn rewriting_book() -> Result<String, String> {
    let (_, log) = run_book("rewriting");
    let n = golden("rewriting", &log)?;
    let bodies = [
        ("testing", "((y_1 pair x_1):obj)"),
        ("test", "((m_1 + (n_1 + (p_1 + q_1))):in Nat)"),
        ("test2", "((m_1 + (n_1 + (p_1 + (q_1 + (r_1 + s_1))))):in Nat)"),
    ];
    for (name, body) in bodies {
        let (ours, _) = declaration_blocks("rewriting", &log, name)?;
        if !squash(&ours).contains(&squash(body)) {
            return Err(format!("{name} shown as `{ours}`"));
        }
    }
    Ok(format!("{n} responses match, rewritten bodies as printed"))
}

pub fn implicit_book() -> Result<String, String> {
    let (_, log) = run_book("implicit");
    let n = golden("implicit", &log)?;
    let names = [
        "Andintro", "Andelim1", "Andelim2", "Ifintro", "Mp", "Ui", "Ug", "Ptest", "step1",
        "Transimp", "test", "testing",
    ];
    same_declarations("implicit", &log, &names)?;
    Ok(format!("{n} responses match"))
}

pub fn russell_book() -> Result<String, String> {
    let (r, log) = run_book("russell");
    let n = golden("russell", &log)?;
    same_declarations("russell", &log, &["R2", "R3", "R4", "R5", "R6"])?;
    let s = &r.session;
    let Some((Sort::Abst(f), d)) = s.lookup("R6") else {
        return Err("R6 is not a recorded definition".into());
    };
    if d != s.depth() - 1 {
        return Err(format!("R6 recorded at move {}", s.depth() - 1 - d));
    }
    let want = Sort::Ent(EntitySort::That(atom("False")));
    match f.last() {
        Some(e) if e.sort == want => Ok(format!("{n} responses match, R6: that False at move 0")),
        other => Err(format!("R6 output {other:?}")),
    }
}

/// Runs `text` as a file and checks it stopped at the line holding `bad`.
fn halts(text: &str, bad: &str, msg: &str, never: &str) -> Result<(), String> {
    let mut r = Runner::new(std::env::temp_dir());
    let log = r.run_source("errs", "errslog", text);
    if !log.contains(msg) {
        return Err(format!("`{bad}`: no `{msg}` in log"));
    }
    let after = log.split(msg).nth(1).unwrap_or("");
    if r.session.lookup(never).is_some() || after.contains(never) {
        return Err(format!("`{bad}`: execution continued"));
    }
    if r.session.errors != 1 {
        return Err(format!("`{bad}`: {} errors", r.session.errors));
    }
    Ok(())
}

pub fn error_behaviour() -> Result<String, String> {
    halts(
        "declare x obj\ndeclare x prop\ndeclare after obj\n",
        "declare x prop",
        "Identifier x is not fresh",
        "after",
    )?;
    halts(
        "declare x obj\ndeclare y obj\nconstruct f y x obj\ndeclare after obj\n",
        "construct f y x obj",
        "Arguments are in the wrong order",
        "after",
    )?;
    halts(
        "declare x obj\nconstruct p1 x obj\nopen\ndeclare x1 obj\nconstruct P x1 prop\nclose\n\
         rewritec Bad x P, x, p1 x : u\ndeclare after obj\n",
        "rewritec Bad x P, x, p1 x : u",
        "Proposed rewrite list does not sort check",
        "after",
    )?;
    halts("close\ndeclare after obj\n", "close", "Cannot undo move 1", "after")?;
    Ok("redeclaration, argument order, bare pattern, close move 1".into())
}

fn lifecycle_error(text: &str, msg: &str) -> Result<(), String> {
    halts(&format!("{text}\ndeclare after obj\n"), text, msg, "after")
}

fn expect(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

pub fn lifecycle() -> Result<String, String> {
    lifecycle_error("open named", "Cannot follow default move with named move")?;
    lifecycle_error("open\nsave 2", "Cannot save a move with the default numeral name")?;
    lifecycle_error("open\nopen\nsave a", "Cannot save a default move")?;
    lifecycle_error("open\nclearcurrent w", "Named move cannot follow a default move")?;
    lifecycle_error("close", "Cannot undo move 1")?;
    lifecycle_error("load nowhere", "No such theory to load")?;

    let mut r = Runner::new(std::env::temp_dir());
    let script = "\
clearcurrent base
declare x obj
open lemma
declare y obj
save lemma
close
foropen
open lemma
showdec y
close
open other
declare z obj
forclearcurrent
clearcurrent lemma
showdec y
close
";
    let log = r.run_source("life", "lifelog", script);
    let s = &r.session;
    expect(s.errors == 0, &format!("scripted session failed:\n{log}"))?;
    // foropen and forclearcurrent are not echoed; each answers with a list
    expect(log.matches("says:  \n\nlemma\n").count() == 2, "lemma not listed twice")?;
    expect(log.matches("y:  obj").count() + log.matches("y: obj").count() >= 3, "lemma not restored")?;
    expect(s.move_names() == ["base", "0"], "move names not restored")?;
    expect(s.lookup("z").is_none(), "cleared declaration still visible")?;

    // load after readfile
    let mut r = Runner::new(std::env::temp_dir());
    run_book_in(&mut r, "logic");
    let base = r.session.move_at(r.session.depth() - 1).to_vec();
    let (serial, ns) = (r.session.serial(), r.session.ns_serial());
    r.run_source("after", "afterlog", "load logic\ndeclare fresh1 obj\nconstruct freshc fresh1 obj\n");
    let s = &r.session;
    expect(s.errors == 0, "declaration after load failed")?;
    expect(s.depth() == 2, "load left extra moves")?;
    let restored = s.move_at(1);
    expect(restored.len() == base.len() + 1, "move 0 not restored exactly")?;
    expect(restored[..base.len()] == base[..], "move 0 entries differ")?;
    expect(restored[base.len()].age == serial + 2, "declaration counter not restored")?;
    expect(s.ns_serial() > ns, "namespace counter went backwards")?;
    let mut r2 = Runner::new(std::env::temp_dir());
    run_book_in(&mut r2, "logic");
    r2.run_source("again", "againlog", "load logic\ndeclare Forall obj\n");
    expect(r2.session.errors == 1, "move 0 names are fresh after load")?;
    Ok(format!("6 error branches, save/open/clearcurrent round trips, load restores {} entries", base.len()))
}
