//! Implicit arguments: inference of hidden parameters at declaration time
//! and reconstruction of their values at application time.

use crate::session::Session;
use crate::term::{
    argdot, argundot, deent, is_dotted, Argument, Entity, EntitySort, Entry, Frame, Sort,
    UNKNOWN_ARG,
};

type Candidates = Vec<(Argument, Sort)>;

fn drop(s: &Argument, l: Frame) -> Frame {
    l.into_iter().filter(|e| &e.arg != s).collect()
}

fn droplist(l: &[Argument], m: Frame) -> Frame {
    m.into_iter().filter(|e| !l.contains(&e.arg)).collect()
}

fn incrementlist(l: Frame) -> Frame {
    l.into_iter().map(|e| Entry::new(e.age + 1, e.arg, e.sort)).collect()
}

fn binder_dotted(a: &Argument) -> Option<bool> {
    match a {
        Argument::Ent(Entity::Atom(id)) | Argument::Abst(id) => Some(is_dotted(&id.name)),
        _ => None,
    }
}

fn firstundotted(l: &[Entry]) -> Sort {
    l.iter()
        .find(|e| binder_dotted(&e.arg) != Some(true))
        .map(|e| e.sort.clone())
        .unwrap_or(Sort::Ent(EntitySort::Error))
}

fn initialsegment(l: &[Argument], types1: &[Entry]) -> bool {
    l.len() <= types1.len() && l.iter().zip(types1).all(|(x, e)| x == &e.arg)
}

fn matchsegment(l: &[Argument], types: &[Entry]) -> Frame {
    types[..l.len().min(types.len())].to_vec()
}

fn deworld2(s: &Sort) -> Frame {
    match s {
        Sort::Abst(f) => f.clone(),
        _ => Vec::new(),
    }
}

fn that(e: Entity) -> Sort {
    Sort::Ent(EntitySort::That(e))
}

const ERROR_ARG: Argument = Argument::Ent(Entity::Error);

impl Session {
    fn arg2type(&mut self, x: &Argument) -> Sort {
        match x {
            Argument::Ent(e) => that(e.clone()),
            Argument::Lambda(f) => Sort::Abst(f.clone()),
            _ => {
                if &self.expand2(x) != x {
                    let e = self.expand2(x);
                    self.arg2type(&e)
                } else {
                    Sort::Ent(EntitySort::Error)
                }
            }
        }
    }

    /// Variables of the next move found inside a sort, with their sorts.
    pub(crate) fn moretypes(&mut self, t: &Sort) -> Candidates {
        match t {
            Sort::Ent(EntitySort::That(Entity::Atom(id))) if id.ns == 0 => {
                let a = Argument::Ent(Entity::Atom(id.clone()));
                if self.isvariable(&a) {
                    vec![(a, Sort::Ent(EntitySort::Prop))]
                } else {
                    Vec::new()
                }
            }
            Sort::Ent(EntitySort::In(Entity::Atom(id))) if id.ns == 0 => {
                let a = Argument::Ent(Entity::Atom(id.clone()));
                if self.isvariable(&a) {
                    vec![(a, Sort::Ent(EntitySort::Type))]
                } else {
                    Vec::new()
                }
            }
            Sort::Ent(EntitySort::That(Entity::App(h, args)))
            | Sort::Ent(EntitySort::In(Entity::App(h, args))) => {
                let head = Argument::Abst(h.clone());
                let mut out = Vec::new();
                for x in args {
                    if self.isvariable(&head) {
                        let ht = self.argtype(&head);
                        out.push((head.clone(), ht.clone()));
                        out.extend(self.moretypes(&ht));
                    }
                    if self.isvariable(x) {
                        let xt = self.argtype(x);
                        out.push((x.clone(), xt));
                    } else {
                        let xt = self.arg2type(x);
                        out.extend(self.moretypes(&xt));
                    }
                }
                out
            }
            Sort::Abst(f) => match f.as_slice() {
                [] => Vec::new(),
                [e] => {
                    let mut out = self.moretypes(&that(deent(&e.arg)));
                    out.extend(self.moretypes(&e.sort));
                    out
                }
                [e, rest @ ..] => {
                    let mut out = self.moretypes(&e.sort);
                    out.extend(self.moretypes(&Sort::Abst(rest.to_vec())));
                    out
                }
            },
            _ => Vec::new(),
        }
    }

    fn singlesubslist(&mut self, s: &Argument, t: &Argument, l: Frame) -> Frame {
        l.iter()
            .map(|e| {
                let a = self.argsubs(s, t, &e.arg);
                let so = self.typesubs(s, t, &e.sort);
                Entry::new(1, a, so)
            })
            .collect()
    }

    /// Adds dotted candidates in front of a list, keeping dependencies sound.
    fn addotlist(&mut self, m: &[(Argument, Sort)], l: Frame) -> Frame {
        let Some(((s, t), rest)) = m.split_first() else {
            return l;
        };
        if l.is_empty() {
            return vec![Entry::new(1, argdot(s), t.clone())];
        }
        let more = self.moretypes(t);
        let i = l[0].age;
        let ds = argdot(s);
        let inner = self.addotlist(rest, incrementlist(l));
        let inner = drop(s, drop(&ds, inner));
        let td = self.typedeps(t);
        let dotted: Vec<Argument> = td.iter().map(argdot).collect();
        let inner = droplist(&td, droplist(&dotted, inner));
        let inner = self.singlesubslist(s, &ds, inner);
        let mut out = vec![Entry::new(i, ds, t.clone())];
        out.extend(inner);
        self.addotlist(&more, out)
    }

    /// Replaces each candidate by its dotted version throughout the list.
    fn dotsubslist(&mut self, m: &[(Argument, Sort)], l: Frame) -> Frame {
        if m.is_empty() {
            return l;
        }
        l.into_iter()
            .map(|e| {
                let (mut a, mut t) = (e.arg, e.sort);
                for (s, _) in m {
                    let ds = argdot(s);
                    a = self.argsubs(s, &ds, &a);
                    t = self.typesubs(s, &ds, &t);
                }
                Entry::new(e.age, a, t)
            })
            .collect()
    }

    /// Expands a declared argument list with inferred implicit arguments.
    pub(crate) fn expandlist(&mut self, l: &[Entry]) -> Frame {
        let Some((first, rest)) = l.split_first() else {
            return Vec::new();
        };
        let mt = self.moretypes(&first.sort);
        let acc = self.expandlist(rest);
        let td = self.typedeps(&first.sort);
        let dotted: Vec<Argument> = td.iter().map(argdot).collect();
        let acc = droplist(&td, droplist(&dotted, acc));
        let plain = match &first.arg {
            Argument::Ent(Entity::Atom(id)) | Argument::Abst(id) if id.ns == 0 => Some(id),
            _ => None,
        };
        let acc = match plain {
            Some(_) => {
                let da = argdot(&first.arg);
                let acc = drop(&first.arg, drop(&da, acc));
                self.singlesubslist(&da, &first.arg, acc)
            }
            None => acc,
        };
        let mut list = vec![first.clone()];
        list.extend(acc);
        let keys: Vec<Argument> = mt.iter().map(|(a, _)| a.clone()).collect();
        let list = droplist(&keys, list);
        let list = self.dotsubslist(&mt, list);
        self.addotlist(&mt, list)
    }

    pub(crate) fn guardedexpandlist(&mut self, l: &[Entry]) -> Frame {
        if self.implicit {
            self.expandlist(l)
        } else {
            l.to_vec()
        }
    }

    /// Searches the sort `pat` for the position of `a` and reads its value off
    /// the corresponding position of `actual`.
    #[allow(clippy::too_many_arguments)]
    fn findimplicitarg(
        &mut self,
        types1: &[Entry],
        types: &[Entry],
        a: &Argument,
        atype: &Sort,
        pat: &Sort,
        actual: &Sort,
    ) -> Argument {
        use EntitySort::{In, That};
        match (pat, actual) {
            (Sort::Ent(That(Entity::App(s, xl))), Sort::Ent(That(rhs @ Entity::App(t, yl))))
                if !xl.is_empty() && !yl.is_empty() =>
            {
                let abst_s = Argument::Abst(s.clone());
                let af = deworld2(atype);
                if a == &abst_s && initialsegment(xl, types1) {
                    let seg = matchsegment(xl, types);
                    let st = self.silenttypematchcomp0(af.clone(), &seg);
                    if st != EntitySort::Error {
                        let seg_args: Vec<Argument> = seg.iter().map(|e| e.arg.clone()).collect();
                        if *yl == seg_args {
                            return Argument::Abst(t.clone());
                        }
                        let st = self.silenttypematchcomp0(af.clone(), &seg);
                        let mut f = seg;
                        f.push(Entry::new(0, Argument::Ent(rhs.clone()), Sort::Ent(st)));
                        return Argument::Lambda(f);
                    }
                }
                if a == &abst_s {
                    let rt = self.entitytype(rhs);
                    if rt != EntitySort::Error {
                        let typed: Vec<Entry> = yl
                            .iter()
                            .map(|xx| {
                                let s = self.argtype(xx);
                                Entry::new(1, xx.clone(), s)
                            })
                            .collect();
                        let st = self.silenttypematchcomp0(af, &typed);
                        let rt = self.entitytype(rhs);
                        if self.equalenttypes(&st, &rt) {
                            return Argument::Abst(t.clone());
                        }
                    }
                }
                let lhs = Entity::App(s.clone(), xl.clone());
                if s != t {
                    let te = self.expand(&lhs);
                    let ue = self.expand(rhs);
                    if te != lhs {
                        let v = self.findimplicitarg(types1, types, a, atype, &that(te), actual);
                        if v != ERROR_ARG {
                            return v;
                        }
                    }
                    if &ue == rhs {
                        return ERROR_ARG;
                    }
                    return self.findimplicitarg(types1, types, a, atype, pat, &that(ue));
                }
                if a == &xl[0] {
                    return yl[0].clone();
                }
                let px = self.arg2type(&xl[0]);
                let py = self.arg2type(&yl[0]);
                let v = self.findimplicitarg(types1, types, a, atype, &px, &py);
                if v != ERROR_ARG {
                    return v;
                }
                let pat2 = that(Entity::App(s.clone(), xl[1..].to_vec()));
                let act2 = that(Entity::App(t.clone(), yl[1..].to_vec()));
                self.findimplicitarg(types1, types, a, atype, &pat2, &act2)
            }
            (Sort::Ent(That(lhs @ Entity::App(s, l))), Sort::Ent(That(tt))) => {
                if a == &Argument::Abst(s.clone()) && initialsegment(l, types1) {
                    let seg = matchsegment(l, types);
                    let st = self.silenttypematchcomp0(deworld2(atype), &seg);
                    if st != EntitySort::Error {
                        let st = self.silenttypematchcomp0(deworld2(atype), &seg);
                        let mut f = seg;
                        f.push(Entry::new(0, Argument::Ent(tt.clone()), Sort::Ent(st)));
                        return Argument::Lambda(f);
                    }
                }
                let te = self.expand(lhs);
                if &te != lhs {
                    let te = self.expand(lhs);
                    return self.findimplicitarg(types1, types, a, atype, &that(te), actual);
                }
                let ue = self.expand(tt);
                if &ue != tt {
                    let ue = self.expand(tt);
                    return self.findimplicitarg(types1, types, a, atype, pat, &that(ue));
                }
                ERROR_ARG
            }
            (Sort::Ent(In(lhs @ Entity::App(..))), Sort::Ent(In(tt))) => {
                self.findimplicitarg(types1, types, a, atype, &that(lhs.clone()), &that(tt.clone()))
            }
            (Sort::Ent(That(b)), Sort::Ent(That(c))) | (Sort::Ent(In(b)), Sort::Ent(In(c))) => {
                if a == &Argument::Ent(b.clone()) {
                    Argument::Ent(c.clone())
                } else {
                    ERROR_ARG
                }
            }
            (Sort::Abst(l), Sort::Abst(m)) if l.len() == 1 && m.len() == 1 => {
                let v = self.findimplicitarg(types1, types, a, atype, &l[0].sort, &m[0].sort);
                if v == ERROR_ARG {
                    let pb = that(deent(&l[0].arg));
                    let pc = that(deent(&m[0].arg));
                    self.findimplicitarg(types1, types, a, atype, &pb, &pc)
                } else {
                    v
                }
            }
            (Sort::Abst(l), Sort::Abst(m)) if !l.is_empty() && !m.is_empty() => {
                let v = self.findimplicitarg(types1, types, a, atype, &l[0].sort, &m[0].sort);
                if v != ERROR_ARG {
                    return v;
                }
                let mut t1 = types1.to_vec();
                t1.push(l[0].clone());
                let mut t2 = types.to_vec();
                t2.push(m[0].clone());
                self.findimplicitarg(
                    &t1,
                    &t2,
                    a,
                    atype,
                    &Sort::Abst(l[1..].to_vec()),
                    &Sort::Abst(m[1..].to_vec()),
                )
            }
            _ => ERROR_ARG,
        }
    }

    /// Inserts values for implicit arguments into an explicit argument list.
    pub(crate) fn fixarglist(&mut self, frame: &[Entry], args: &[Argument]) -> Vec<Argument> {
        let mut l = frame.to_vec();
        let mut m = args;
        let mut out = Vec::new();
        while let (Some(first), Some(t)) = (l.first().cloned(), m.first()) {
            let rest = l[1..].to_vec();
            match binder_dotted(&first.arg) {
                Some(true) => {
                    let st = self.typesubs(&UNKNOWN_ARG, &UNKNOWN_ARG, &first.sort);
                    let pat = firstundotted(&rest);
                    let actual = self.argtype(t);
                    let mm = self.findimplicitarg(&[], &[], &first.arg, &st, &pat, &actual);
                    l = self.singlesubslist(&first.arg, &mm, rest);
                    out.push(mm);
                }
                Some(false) => {
                    l = self.singlesubslist(&first.arg, t, rest);
                    out.push(t.clone());
                    m = &m[1..];
                }
                None => {
                    l = rest;
                    out.push(t.clone());
                    m = &m[1..];
                }
            }
        }
        out
    }

    pub(crate) fn guardedfixarglist(&mut self, frame: &[Entry], args: &[Argument]) -> Vec<Argument> {
        if self.implicit {
            self.fixarglist(frame, args)
        } else {
            args.to_vec()
        }
    }

    /// Renames undotted occurrences of dotted binders in a sort.
    pub(crate) fn dotfix(&mut self, l: &[Entry], t: &EntitySort) -> EntitySort {
        let mut t = t.clone();
        if !self.implicit {
            return t;
        }
        for e in l.iter().rev() {
            let u = argundot(&e.arg);
            if u != e.arg {
                t = self.etypesubs(&u, &e.arg, &t);
            }
        }
        t
    }

    /// Same renaming in an entity.
    pub(crate) fn dotfix2(&mut self, l: &[Entry], t: &Entity) -> Entity {
        let mut t = t.clone();
        if !self.implicit {
            return t;
        }
        for e in l.iter().rev() {
            let u = argundot(&e.arg);
            if u != e.arg {
                t = self.entsubs(&u, &e.arg, &t);
            }
        }
        t
    }

    /// Explicit binders only.
    pub(crate) fn dotpurge(&self, l: &[Entry]) -> Frame {
        if !self.implicit {
            return l.to_vec();
        }
        l.iter()
            .filter(|e| binder_dotted(&e.arg) != Some(true))
            .cloned()
            .collect()
    }
}
