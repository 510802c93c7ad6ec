//! Session state: the move stack, rule stacks, registries and output buffers.

use crate::term::{Argument, Entity, Entry, Frame, Ident, Sort};

/// A rewrite rule justified by a witness function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub witness: String,
    pub pattern: Entity,
    pub target: Entity,
}

/// Move 0 of a finished file together with the counters at that point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub serial: i64,
    pub ns_serial: i64,
    pub base: Frame,
}

pub const DEFAULT_MARGIN: i64 = 40;

/// All mutable state of one Lestrade session.
///
/// Stacks are stored top first: index 0 is the next move, index 1 the
/// last move and the final element is move 0.
#[derive(Clone, Debug)]
pub struct Session {
    pub(crate) moves: Vec<Frame>,
    pub(crate) rewrites: Vec<Vec<Rule>>,
    pub(crate) names: Vec<String>,
    pub(crate) saved_moves: Vec<(Vec<String>, Frame)>,
    pub(crate) saved_rewrites: Vec<(Vec<String>, Vec<Rule>)>,
    pub(crate) theories: Vec<(String, Theory)>,
    pub(crate) serial: i64,
    pub(crate) ns_serial: i64,
    pub rewriting: bool,
    pub implicit: bool,
    pub show_implicit: bool,
    pub margin: i64,
    pub(crate) extra_indents: i64,
    /// Set by any command error; file execution stops when it is raised.
    pub breakout: bool,
    /// Number of command errors reported so far.
    pub errors: usize,
    pub greeted: bool,
    console: String,
    log: String,
}

impl Default for Session {
    fn default() -> Self {
        Self::new()
    }
}

impl Session {
    pub fn new() -> Self {
        Session {
            moves: vec![Vec::new(), Vec::new()],
            rewrites: vec![Vec::new(), Vec::new()],
            names: vec!["1".into(), "0".into()],
            saved_moves: Vec::new(),
            saved_rewrites: Vec::new(),
            theories: Vec::new(),
            serial: 0,
            ns_serial: 0,
            rewriting: true,
            implicit: true,
            show_implicit: false,
            margin: DEFAULT_MARGIN,
            extra_indents: 0,
            breakout: false,
            errors: 0,
            greeted: false,
            console: String::new(),
            log: String::new(),
        }
    }

    // output

    pub fn take_console(&mut self) -> String {
        std::mem::take(&mut self.console)
    }

    pub fn take_log(&mut self) -> String {
        std::mem::take(&mut self.log)
    }

    pub fn console(&self) -> &str {
        &self.console
    }

    pub fn log(&self) -> &str {
        &self.log
    }

    pub(crate) fn write_log(&mut self, s: &str) {
        self.log.push_str(s);
    }

    /// System message to the console and, as a comment, to the log.
    pub fn say(&mut self, s: &str) {
        self.console.push_str(&format!("\nInspector Lestrade says:  {s}\n\n"));
        self.log.push_str(&format!("\n>> Inspector Lestrade says:  {s}\n\n"));
    }

    /// Error message; raises the breakout flag.
    pub fn saypause(&mut self, s: &str) {
        self.say(&format!("{s}\n>> Hit return to continue\n\n"));
        self.breakout = true;
        self.errors += 1;
    }

    /// Pretty printed text to the console only.
    pub(crate) fn say0(&mut self, s: &str) {
        self.extra_indents = 0;
        let text = self.prettyprint(s);
        self.console.push_str(&text);
        self.console.push('\n');
    }

    /// Pretty printed text to the console and the log.
    pub(crate) fn say1(&mut self, s: &str) {
        self.say0(s);
        self.extra_indents = 0;
        let text = self.prettyprint2(s);
        self.log.push_str("\n>> ");
        self.log.push_str(&text);
        self.log.push('\n');
    }

    // counters

    pub(crate) fn newserial(&mut self) -> i64 {
        self.serial += 1;
        self.serial
    }

    pub(crate) fn newnameserial(&mut self) -> i64 {
        self.ns_serial += 1;
        self.ns_serial
    }

    pub fn serial(&self) -> i64 {
        self.serial
    }

    pub fn ns_serial(&self) -> i64 {
        self.ns_serial
    }

    pub fn depth(&self) -> usize {
        self.moves.len()
    }

    pub fn move_names(&self) -> &[String] {
        &self.names
    }

    /// Declarations of the move at the given distance below the next move.
    pub fn move_at(&self, distance: usize) -> &[Entry] {
        &self.moves[distance]
    }

    /// Rule lists, top first.
    pub fn rule_stack(&self) -> &[Vec<Rule>] {
        &self.rewrites
    }

    // lookup

    pub(crate) fn find_in(frame: &[Entry], a: &Argument) -> Option<usize> {
        frame.iter().position(|e| &e.arg == a)
    }

    /// Sort of an identifier and the distance of its move from the next move.
    pub fn lookup(&self, s: &str) -> Option<(Sort, usize)> {
        let e = Argument::Ent(Entity::Atom(Ident::user(s)));
        let a = Argument::Abst(Ident::user(s));
        for (d, m) in self.moves.iter().enumerate() {
            if let Some(i) = Self::find_in(m, &e) {
                return Some((m[i].sort.clone(), d));
            }
            if let Some(i) = Self::find_in(m, &a) {
                return Some((m[i].sort.clone(), d));
            }
        }
        None
    }

    pub(crate) fn stringtype(&self, s: &str) -> Option<Sort> {
        self.lookup(s).map(|(t, _)| t)
    }

    /// Declaration age of an identifier; 0 marks a definition.
    pub fn declaration_age(&self, s: &str) -> Option<i64> {
        let e = Argument::Ent(Entity::Atom(Ident::user(s)));
        let a = Argument::Abst(Ident::user(s));
        for m in &self.moves {
            if let Some(i) = Self::find_in(m, &e) {
                return Some(m[i].age);
            }
            if let Some(i) = Self::find_in(m, &a) {
                return Some(m[i].age);
            }
        }
        None
    }

    pub(crate) fn next_entry(&self, a: &Argument) -> Option<&Entry> {
        Self::find_in(&self.moves[0], a).map(|i| &self.moves[0][i])
    }

    pub(crate) fn next_age(&self, a: &Argument) -> Option<i64> {
        self.next_entry(a).map(|e| e.age)
    }

    /// Frame of an abstraction defined in the next move.
    pub(crate) fn next_definition(&self, id: &Ident) -> Option<Frame> {
        if id.ns != 0 {
            return None;
        }
        let e = self.next_entry(&Argument::Abst(id.clone()))?;
        if e.age != 0 {
            return None;
        }
        match &e.sort {
            Sort::Abst(f) => Some(f.clone()),
            _ => Some(Vec::new()),
        }
    }

    pub(crate) fn isnew(&self, a: &Argument) -> bool {
        self.next_entry(a).is_some()
    }

    pub(crate) fn isvariable(&self, a: &Argument) -> bool {
        self.next_age(a).is_some_and(|n| n != 0)
    }

    pub(crate) fn isdefvar(&self, a: &Argument) -> bool {
        self.isnew(a) && !self.isvariable(a)
    }

    pub(crate) fn getabstype(&mut self, s: &Sort) -> Frame {
        match s {
            Sort::Abst(f) => f.clone(),
            _ => {
                self.saypause("getabstype error");
                Vec::new()
            }
        }
    }

    // move names

    pub(crate) fn worldname(&self, n: usize) -> String {
        let l = &self.names[n.min(self.names.len())..];
        match l.first() {
            None => "bogus".into(),
            Some(h) if *h == (l.len() - 1).to_string() => String::new(),
            Some(h) => format!(":{h}"),
        }
    }

    /// True when the top name is the default numeral of its position.
    pub(crate) fn defaultworld(l: &[String]) -> bool {
        l.len() >= 2 && l[0] == (l.len() - 1).to_string()
    }

    fn savedfor(&self, path: &[String]) -> String {
        let mut out = String::new();
        for (k, _) in &self.saved_moves {
            if &k[1..] == path {
                out.push_str(&k[0]);
                out.push('\n');
            }
        }
        out
    }

    pub fn list_openable(&self) -> String {
        self.savedfor(&self.names)
    }

    pub fn list_clearable(&self) -> String {
        self.savedfor(&self.names[1..])
    }

    // move lifecycle

    pub fn open_move(&mut self, s: &str) {
        let mut path = vec![s.to_string()];
        path.extend(self.names.iter().cloned());
        if Self::defaultworld(&self.names) && !Self::defaultworld(&path) {
            self.saypause("Cannot follow default move with named move");
            return;
        }
        let w = find_saved(&self.saved_moves, &path);
        let r = find_saved(&self.saved_rewrites, &path);
        match w {
            None => {
                self.moves.insert(0, Vec::new());
                self.rewrites.insert(0, Vec::new());
            }
            Some(w) => {
                self.moves.insert(0, w);
                self.rewrites.insert(0, r.unwrap_or_default());
            }
        }
        self.names.insert(0, s.to_string());
    }

    pub fn close_move(&mut self) {
        if self.moves.len() > 2 {
            self.moves.remove(0);
            self.rewrites.remove(0);
            self.names.remove(0);
        } else {
            let msg = format!("Cannot undo move 1:{}", self.names[0]);
            self.saypause(&msg);
        }
    }

    pub fn save_moves(&mut self, s: &str) {
        if s == (self.moves.len() - 1).to_string() {
            self.saypause("Cannot save a move with the default numeral name");
            return;
        }
        if Self::defaultworld(&self.names[1..]) {
            self.saypause("Cannot save a default move");
            return;
        }
        let mut path = vec![s.to_string()];
        path.extend(self.names[1..].iter().cloned());
        let worlds = savelist(&path, &self.moves);
        let rules = savelist(&path, &self.rewrites);
        self.saved_moves = abstractmerge(worlds, std::mem::take(&mut self.saved_moves));
        self.saved_rewrites = abstractmerge(rules, std::mem::take(&mut self.saved_rewrites));
        self.names[0] = s.to_string();
    }

    pub fn clear_current(&mut self, s: &str) {
        let mut path = vec![s.to_string()];
        path.extend(self.names[1..].iter().cloned());
        if Self::defaultworld(&self.names[1..]) && !Self::defaultworld(&path) {
            self.saypause("Named move cannot follow a default move");
            return;
        }
        let w = find_saved(&self.saved_moves, &path);
        let r = find_saved(&self.saved_rewrites, &path);
        match w {
            None => {
                self.moves[0] = Vec::new();
                self.rewrites[0] = Vec::new();
            }
            Some(w) => {
                self.moves[0] = w;
                self.rewrites[0] = r.unwrap_or_default();
            }
        }
        self.names[0] = s.to_string();
    }

    pub fn clear_all(&mut self) {
        self.greeted = false;
        self.moves = vec![Vec::new(), Vec::new()];
        self.rewrites = vec![Vec::new(), Vec::new()];
        self.serial = 0;
        self.ns_serial = 0;
        self.names = vec!["1".into(), "0".into()];
    }

    pub fn save_theory(&mut self, name: &str) {
        let t = Theory {
            serial: self.serial,
            ns_serial: self.ns_serial,
            base: self.moves.last().cloned().unwrap_or_default(),
        };
        self.theories.retain(|(k, _)| k != name);
        self.theories.insert(0, (name.to_string(), t));
    }

    pub fn load_theory(&mut self, s: &str) {
        let found = self.theories.iter().find(|(k, _)| k == s).map(|(_, t)| t.clone());
        match found {
            Some(t) if !s.is_empty() => {
                self.greeted = false;
                self.moves = vec![Vec::new(), t.base];
                self.rewrites = vec![Vec::new(), Vec::new()];
                self.serial = t.serial;
                self.ns_serial = t.ns_serial;
                self.names = vec!["1".into(), "0".into()];
            }
            _ => self.saypause("No such theory to load"),
        }
    }

    pub fn has_theory(&self, s: &str) -> bool {
        self.theories.iter().any(|(k, _)| k == s)
    }

    pub fn set_features(&mut self, rewriting: bool, implicit: bool) {
        self.rewriting = rewriting;
        self.implicit = implicit;
    }
}

fn find_saved<T: Clone>(reg: &[(Vec<String>, T)], path: &[String]) -> Option<T> {
    reg.iter().find(|(k, _)| k == path).map(|(_, v)| v.clone())
}

/// Pairs each level of the path with its stack entry, down to move 1.
fn savelist<T: Clone>(names: &[String], stack: &[T]) -> Vec<(Vec<String>, T)> {
    let mut out = Vec::new();
    let (mut n, mut c) = (names, stack);
    while c.len() > 1 && n.len() > 1 {
        out.push((n.to_vec(), c[0].clone()));
        n = &n[1..];
        c = &c[1..];
    }
    out
}

/// Merge with entries of `new` overriding same-keyed entries of `old`.
fn abstractmerge<K: PartialEq, T>(new: Vec<(K, T)>, mut old: Vec<(K, T)>) -> Vec<(K, T)> {
    old.retain(|(k, _)| !new.iter().any(|(n, _)| n == k));
    let mut out = new;
    out.extend(old);
    out
}
