//! Substitution, bound variable renaming and definition expansion.
//!
//! Every substitution expands abstractions defined in the next move, since
//! its result is usually recorded one move down where those names are out
//! of scope.

use crate::session::Session;
use crate::term::{Argument, Entity, EntitySort, Entry, Frame, Ident, Sort, UNKNOWN_ARG};

impl Session {
    pub fn typesubs(&mut self, a: &Argument, b: &Argument, t: &Sort) -> Sort {
        match t {
            Sort::Ent(e) => Sort::Ent(self.etypesubs(a, b, e)),
            Sort::Abst(f) => {
                let f = self.renamespace(f);
                Sort::Abst(self.atypesubs(a, b, &f))
            }
        }
    }

    pub fn atypesubs(&mut self, a: &Argument, b: &Argument, f: &[Entry]) -> Frame {
        let mut out = Vec::with_capacity(f.len());
        for e in f {
            let arg = self.argsubs(a, b, &e.arg);
            let sort = self.typesubs(a, b, &e.sort);
            out.push(Entry::new(e.age, arg, sort));
        }
        out
    }

    pub fn etypesubs(&mut self, a: &Argument, b: &Argument, t: &EntitySort) -> EntitySort {
        match t {
            EntitySort::That(p) => EntitySort::That(self.entsubs(a, b, p)),
            EntitySort::In(p) => EntitySort::In(self.entsubs(a, b, p)),
            x => x.clone(),
        }
    }

    fn map_argsubs(&mut self, a: &Argument, b: &Argument, m: &[Argument]) -> Vec<Argument> {
        m.iter().map(|x| self.argsubs(a, b, x)).collect()
    }

    pub fn entsubs(&mut self, a: &Argument, b: &Argument, t: &Entity) -> Entity {
        match (a, b, t) {
            (Argument::Ent(x), Argument::Ent(y), Entity::Atom(_)) => {
                if x == t {
                    y.clone()
                } else {
                    t.clone()
                }
            }
            (Argument::Ent(_), Argument::Ent(_), Entity::App(h, m)) => {
                if let Some(def) = self.next_definition(h) {
                    let args = self.map_argsubs(a, b, m);
                    let body = self.defmatchcomp(true, &def, &args);
                    self.entsubs(a, b, &body)
                } else {
                    Entity::App(h.clone(), self.map_argsubs(a, b, m))
                }
            }
            (Argument::Abst(x), Argument::Abst(y), Entity::App(h, m)) => {
                if let Some(def) = self.next_definition(h) {
                    let args = self.map_argsubs(a, b, m);
                    let body = self.defmatchcomp(true, &def, &args);
                    self.entsubs(a, b, &body)
                } else if x == h {
                    let args = self.map_argsubs(a, b, m);
                    let renamed = Entity::App(y.clone(), args);
                    if x == y {
                        renamed
                    } else {
                        self.entsubs(a, b, &renamed)
                    }
                } else {
                    Entity::App(h.clone(), self.map_argsubs(a, b, m))
                }
            }
            (Argument::Abst(x), Argument::Lambda(w), Entity::App(h, m)) => {
                if let Some(def) = self.next_definition(h) {
                    let args = self.map_argsubs(a, b, m);
                    let body = self.defmatchcomp(true, &def, &args);
                    self.entsubs(a, b, &body)
                } else if x == h {
                    let args = self.map_argsubs(a, b, m);
                    let body = self.defmatchcomp(true, w, &args);
                    self.entsubs(a, b, &body)
                } else {
                    Entity::App(h.clone(), self.map_argsubs(a, b, m))
                }
            }
            _ => t.clone(),
        }
    }

    pub fn argsubs(&mut self, x: &Argument, y: &Argument, t: &Argument) -> Argument {
        match t {
            Argument::Ent(e) => Argument::Ent(self.entsubs(x, y, e)),
            Argument::Abst(id) => {
                if let Some(def) = self.next_definition(id) {
                    self.argsubs(x, y, &Argument::Lambda(def))
                } else if x == t && x != y {
                    self.argsubs(x, y, y)
                } else {
                    t.clone()
                }
            }
            Argument::Lambda(f) => {
                if x == y {
                    Argument::Lambda(self.atypesubs(x, y, f))
                } else {
                    let f = self.renamespace(f);
                    Argument::Lambda(self.atypesubs(x, y, &f))
                }
            }
        }
    }

    /// Moves every binder of a frame into one fresh namespace.
    pub fn renamespace(&mut self, f: &[Entry]) -> Frame {
        let n = self.newnameserial();
        self.renamespace0(n, f)
    }

    fn renamespace0(&mut self, n: i64, f: &[Entry]) -> Frame {
        if f.len() == 1 {
            return f.to_vec();
        }
        let Some(first) = f.first() else {
            self.saypause("Bad case in renamespace");
            return Vec::new();
        };
        let (old, new) = match &first.arg {
            Argument::Abst(id) => (
                first.arg.clone(),
                Argument::Abst(Ident::new(id.name.clone(), n)),
            ),
            Argument::Ent(Entity::Atom(id)) => (
                first.arg.clone(),
                Argument::Ent(Entity::Atom(Ident::new(id.name.clone(), n))),
            ),
            _ => {
                self.saypause("Bad case in renamespace");
                return Vec::new();
            }
        };
        let rest = self.renamespace0(n, &f[1..]);
        let rest = self.atypesubs(&old, &new, &rest);
        let mut out = vec![Entry::new(first.age, new, first.sort.clone())];
        out.extend(rest);
        out
    }

    /// Instantiates a defined abstraction's frame on an argument list.
    pub fn defmatchcomp(&mut self, safe: bool, f: &[Entry], m: &[Argument]) -> Entity {
        let l = self.renamespace(f);
        let args: Vec<Entry> = m
            .iter()
            .map(|x| {
                let s = if safe { Sort::Ent(EntitySort::Error) } else { self.argtype(x) };
                Entry::new(0, x.clone(), s)
            })
            .collect();
        self.defmatchcomp0(safe, l, &args)
    }

    pub(crate) fn defmatchcomp0(&mut self, safe: bool, mut l: Frame, m: &[Entry]) -> Entity {
        let mut m = m;
        loop {
            match (l.as_slice(), m) {
                ([last], []) => {
                    return match (&last.arg, &last.sort) {
                        (Argument::Ent(a), Sort::Ent(_)) => a.clone(),
                        _ => Entity::Error,
                    };
                }
                ([first, ..], [given, rest @ ..]) => {
                    if !safe && !self.equaltypes(false, &first.sort, &given.sort) {
                        return Entity::Error;
                    }
                    let (a, b) = (first.arg.clone(), given.arg.clone());
                    let tail = l[1..].to_vec();
                    l = self.subst_entries(&a, &b, &tail);
                    m = rest;
                }
                _ => return Entity::Error,
            }
        }
    }

    /// Substitutes through the binders and sorts of a list of entries.
    pub(crate) fn subst_entries(&mut self, a: &Argument, b: &Argument, l: &[Entry]) -> Frame {
        l.iter()
            .map(|e| {
                let arg = self.argsubs(a, b, &e.arg);
                let sort = self.typesubs(a, b, &e.sort);
                Entry::new(e.age, arg, sort)
            })
            .collect()
    }

    /// One step of expansion of a defined abstraction in applied position.
    pub fn expand(&mut self, e: &Entity) -> Entity {
        if let Entity::App(h, m) = e {
            if h.ns == 0 && self.declaration_age(&h.name) == Some(0) {
                let sort = self.stringtype(&h.name).unwrap_or(Sort::Ent(EntitySort::Error));
                let f = self.getabstype(&sort);
                let body = self.defmatchcomp(true, &f, m);
                return self.entsubs(&UNKNOWN_ARG, &UNKNOWN_ARG, &body);
            }
        }
        e.clone()
    }

    /// Replaces a defined abstraction argument by its lambda term.
    pub fn expand2(&mut self, a: &Argument) -> Argument {
        if let Argument::Abst(id) = a {
            if id.ns == 0 && self.declaration_age(&id.name) == Some(0) {
                let sort = self.stringtype(&id.name).unwrap_or(Sort::Ent(EntitySort::Error));
                let f = self.getabstype(&sort);
                return self.argsubs(&UNKNOWN_ARG, &UNKNOWN_ARG, &Argument::Lambda(f));
            }
        }
        a.clone()
    }
}
