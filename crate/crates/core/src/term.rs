//! Terms, sorts and the pure structural helpers over them.

use std::collections::HashMap;

/// A name together with its namespace tag.
///
/// Tag 0 is user scope, positive tags mark renamed bound variables and
/// negative tags mark rewrite pattern variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ident {
    pub name: String,
    pub ns: i64,
}

impl Ident {
    pub fn new(name: impl Into<String>, ns: i64) -> Self {
        Ident { name: name.into(), ns }
    }

    pub fn user(name: impl Into<String>) -> Self {
        Ident::new(name, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Entity {
    Unknown,
    Error,
    Atom(Ident),
    App(Ident, Vec<Argument>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Argument {
    Ent(Entity),
    Abst(Ident),
    Lambda(Frame),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EntitySort {
    Obj,
    Prop,
    Type,
    That(Entity),
    In(Entity),
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Ent(EntitySort),
    Abst(Frame),
}

/// One binder of a frame, or one declaration of a move.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Entry {
    pub age: i64,
    pub arg: Argument,
    pub sort: Sort,
}

impl Entry {
    pub fn new(age: i64, arg: Argument, sort: Sort) -> Self {
        Entry { age, arg, sort }
    }
}

/// Abstraction sorts, lambda terms and moves all share this shape.
pub type Frame = Vec<Entry>;

pub fn atom(name: &str) -> Entity {
    Entity::Atom(Ident::user(name))
}

pub fn ent_arg(name: &str) -> Argument {
    Argument::Ent(atom(name))
}

pub fn abst_arg(name: &str) -> Argument {
    Argument::Abst(Ident::user(name))
}

pub const UNKNOWN_ARG: Argument = Argument::Ent(Entity::Unknown);
pub const ERROR_ARG: Argument = Argument::Ent(Entity::Error);

pub fn error_sort() -> Sort {
    Sort::Ent(EntitySort::Error)
}

/// Coerce an argument to an entity.
pub fn deent(a: &Argument) -> Entity {
    match a {
        Argument::Ent(e) => e.clone(),
        _ => Entity::Error,
    }
}

pub fn is_ent_sort(s: &Sort) -> bool {
    matches!(s, Sort::Ent(_))
}

pub fn head_name(e: &Entity) -> &str {
    match e {
        Entity::App(h, _) => &h.name,
        _ => "",
    }
}

pub fn args_of(e: &Entity) -> &[Argument] {
    match e {
        Entity::App(_, args) => args,
        _ => &[],
    }
}

pub fn reserved(s: &str) -> bool {
    matches!(s, "obj" | "prop" | "that" | "type" | "in" | "---" | "???")
}

// dotted names mark implicit arguments

pub fn is_dotted(s: &str) -> bool {
    s.starts_with('.')
}

pub fn dot(s: &str) -> String {
    if s.is_empty() || is_dotted(s) {
        s.to_string()
    } else {
        format!(".{s}")
    }
}

pub fn undot(s: &str) -> String {
    s.strip_prefix('.').unwrap_or(s).to_string()
}

pub fn argdot(a: &Argument) -> Argument {
    match a {
        Argument::Ent(Entity::Atom(id)) => Argument::Ent(Entity::Atom(Ident::new(dot(&id.name), id.ns))),
        Argument::Abst(id) => Argument::Abst(Ident::new(dot(&id.name), id.ns)),
        x => x.clone(),
    }
}

pub fn argundot(a: &Argument) -> Argument {
    match a {
        Argument::Ent(Entity::Atom(id)) => {
            Argument::Ent(Entity::Atom(Ident::new(undot(&id.name), id.ns)))
        }
        Argument::Abst(id) => Argument::Abst(Ident::new(undot(&id.name), id.ns)),
        x => x.clone(),
    }
}

/// Name of a binder if it is a plain identifier.
pub fn binder_name(a: &Argument) -> Option<&str> {
    match a {
        Argument::Ent(Entity::Atom(id)) | Argument::Abst(id) => Some(&id.name),
        _ => None,
    }
}

// negation of namespace tags

pub fn negate_entity(e: &Entity) -> Entity {
    match e {
        Entity::Atom(id) => Entity::Atom(Ident::new(id.name.clone(), -id.ns)),
        Entity::App(h, args) => Entity::App(
            Ident::new(h.name.clone(), -h.ns),
            args.iter().map(negate_argument).collect(),
        ),
        x => x.clone(),
    }
}

pub fn negate_argument(a: &Argument) -> Argument {
    match a {
        Argument::Ent(e) => Argument::Ent(negate_entity(e)),
        Argument::Abst(id) => Argument::Abst(Ident::new(id.name.clone(), -id.ns)),
        Argument::Lambda(f) => Argument::Lambda(negate_frame(f)),
    }
}

pub fn negate_frame(f: &Frame) -> Frame {
    f.iter()
        .map(|e| Entry::new(e.age, negate_argument(&e.arg), negate_sort(&e.sort)))
        .collect()
}

pub fn negate_sort(s: &Sort) -> Sort {
    match s {
        Sort::Ent(t) => Sort::Ent(negate_entity_sort(t)),
        Sort::Abst(f) => Sort::Abst(negate_frame(f)),
    }
}

pub fn negate_entity_sort(t: &EntitySort) -> EntitySort {
    match t {
        EntitySort::That(e) => EntitySort::That(negate_entity(e)),
        EntitySort::In(e) => EntitySort::In(negate_entity(e)),
        x => x.clone(),
    }
}

/// Renumbers namespace tags 1, 2, 3, ... in order of first occurrence.
#[derive(Default)]
pub struct Reindexer {
    seen: HashMap<i64, i64>,
    fresh: i64,
}

impl Reindexer {
    pub fn new() -> Self {
        Reindexer { seen: HashMap::new(), fresh: 1 }
    }

    fn renumber(&mut self, n: i64) -> i64 {
        if n == 0 {
            return 0;
        }
        if let Some(&m) = self.seen.get(&n) {
            return m;
        }
        let m = self.fresh;
        self.seen.insert(n, m);
        self.fresh += 1;
        m
    }

    pub fn entity_sort(&mut self, t: &EntitySort) -> EntitySort {
        match t {
            EntitySort::That(e) => EntitySort::That(self.entity(e)),
            EntitySort::In(e) => EntitySort::In(self.entity(e)),
            x => x.clone(),
        }
    }

    pub fn frame(&mut self, f: &Frame) -> Frame {
        f.iter()
            .map(|e| {
                let arg = self.argument(&e.arg);
                let sort = self.sort(&e.sort);
                Entry::new(e.age, arg, sort)
            })
            .collect()
    }

    pub fn sort(&mut self, s: &Sort) -> Sort {
        match s {
            Sort::Ent(t) => Sort::Ent(self.entity_sort(t)),
            Sort::Abst(f) => Sort::Abst(self.frame(f)),
        }
    }

    pub fn entity(&mut self, e: &Entity) -> Entity {
        match e {
            Entity::Atom(id) => Entity::Atom(Ident::new(id.name.clone(), self.renumber(id.ns))),
            Entity::App(h, args) => {
                let ns = self.renumber(h.ns);
                Entity::App(
                    Ident::new(h.name.clone(), ns),
                    args.iter().map(|a| self.argument(a)).collect(),
                )
            }
            x => x.clone(),
        }
    }

    pub fn argument(&mut self, a: &Argument) -> Argument {
        match a {
            Argument::Ent(e) => Argument::Ent(self.entity(e)),
            Argument::Abst(id) => Argument::Abst(Ident::new(id.name.clone(), self.renumber(id.ns))),
            Argument::Lambda(f) => Argument::Lambda(self.frame(f)),
        }
    }
}

/// Canonical renumbering applied to recorded and displayed sorts.
pub fn reindex_sort(s: &Sort) -> Sort {
    Reindexer::new().sort(s)
}

/// Every namespace tag in a sort, in traversal order.
pub fn sort_tags(s: &Sort) -> Vec<i64> {
    fn ent(e: &Entity, out: &mut Vec<i64>) {
        match e {
            Entity::Atom(id) => out.push(id.ns),
            Entity::App(h, args) => {
                out.push(h.ns);
                for a in args {
                    arg(a, out);
                }
            }
            _ => {}
        }
    }
    fn arg(a: &Argument, out: &mut Vec<i64>) {
        match a {
            Argument::Ent(e) => ent(e, out),
            Argument::Abst(id) => out.push(id.ns),
            Argument::Lambda(f) => frame(f, out),
        }
    }
    fn frame(f: &Frame, out: &mut Vec<i64>) {
        for e in f {
            arg(&e.arg, out);
            sort(&e.sort, out);
        }
    }
    fn sort(s: &Sort, out: &mut Vec<i64>) {
        match s {
            Sort::Ent(EntitySort::That(e)) | Sort::Ent(EntitySort::In(e)) => ent(e, out),
            Sort::Ent(_) => {}
            Sort::Abst(f) => frame(f, out),
        }
    }
    let mut out = Vec::new();
    sort(s, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn app(name: &str, ns: i64, args: Vec<Argument>) -> Entity {
        Entity::App(Ident::new(name, ns), args)
    }

    fn var(name: &str, ns: i64) -> Argument {
        Argument::Ent(Entity::Atom(Ident::new(name, ns)))
    }

    #[test]
    fn negation_flips_tags_and_fixes_zero() {
        assert_eq!(negate_entity(&atom("x")), atom("x"));
        let e = app("+", 0, vec![var("m", 1), var("n", 1)]);
        let n = app("+", 0, vec![var("m", -1), var("n", -1)]);
        assert_eq!(negate_entity(&e), n);
        assert_eq!(negate_entity(&negate_entity(&e)), e);
    }

    #[test]
    fn reindex_first_occurrence() {
        let s = Sort::Ent(EntitySort::That(app(
            "P",
            17,
            vec![var("x", 17), var("y", 42), var("z", 0)],
        )));
        assert_eq!(sort_tags(&reindex_sort(&s)), vec![1, 1, 2, 0]);
        let closed = Sort::Ent(EntitySort::That(app("P", 0, vec![var("x", 0)])));
        assert_eq!(reindex_sort(&closed), closed);
    }

    #[test]
    fn dotting() {
        assert_eq!(dot("p"), ".p");
        assert_eq!(dot(".p"), ".p");
        assert_eq!(dot(""), "");
        assert_eq!(undot(".p"), "p");
        assert_eq!(undot("p"), "p");
        assert_eq!(argdot(&abst_arg("P")), abst_arg(".P"));
        assert_eq!(argundot(&argdot(&ent_arg("x"))), ent_arg("x"));
        let lam = Argument::Lambda(vec![]);
        assert_eq!(argdot(&lam), lam);
    }

    #[test]
    fn reserved_words() {
        for w in ["obj", "prop", "that", "type", "in", "---", "???"] {
            assert!(reserved(w));
        }
        assert!(!reserved("p"));
    }
}
