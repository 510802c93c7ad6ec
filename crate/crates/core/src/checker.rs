//! Sort computation, definition-aware equality and the declaration commands.

use crate::session::Session;
use crate::term::{
    deent, reindex_sort, reserved, Argument, Entity, EntitySort, Entry, Frame, Ident,
    Sort, UNKNOWN_ARG,
};

impl Session {
    // equality

    /// Sort equality up to renaming of binders. With `exact` the bodies of
    /// single-entry frames must also agree.
    pub fn equaltypes(&mut self, exact: bool, s1: &Sort, s2: &Sort) -> bool {
        match (s1, s2) {
            (Sort::Ent(x), Sort::Ent(y)) => {
                *x != EntitySort::Error
                    && *y != EntitySort::Error
                    && (x == y || self.equalenttypes(x, y))
            }
            (Sort::Abst(l), Sort::Abst(m)) if l.len() == 1 && m.len() == 1 => {
                self.equaltypes(false, &l[0].sort, &m[0].sort)
                    && (!exact || self.equalentities(&deent(&l[0].arg), &deent(&m[0].arg)))
            }
            (Sort::Abst(l), Sort::Abst(m)) if !l.is_empty() && !m.is_empty() => {
                if !self.equaltypes(false, &l[0].sort, &m[0].sort) {
                    return false;
                }
                let rest = self.typesubs(&l[0].arg, &m[0].arg, &Sort::Abst(l[1..].to_vec()));
                self.equaltypes(exact, &rest, &Sort::Abst(m[1..].to_vec()))
            }
            _ => false,
        }
    }

    pub fn equalenttypes(&mut self, x: &EntitySort, y: &EntitySort) -> bool {
        match (x, y) {
            (EntitySort::That(p), EntitySort::That(q)) | (EntitySort::In(p), EntitySort::In(q)) => {
                self.equalentities(p, q)
            }
            (EntitySort::Error, _) | (_, EntitySort::Error) => false,
            _ => x == y,
        }
    }

    pub fn equivlambdas(&mut self, x: &Argument, y: &Argument) -> bool {
        match (x, y) {
            (Argument::Lambda(a), Argument::Lambda(b)) => {
                a == b || self.equaltypes(true, &Sort::Abst(a.clone()), &Sort::Abst(b.clone()))
            }
            _ => x == y,
        }
    }

    /// Entity equality allowing definition expansion and rewriting.
    pub fn equalentities(&mut self, l: &Entity, r: &Entity) -> bool {
        match (l, r) {
            (Entity::App(s, m), Entity::App(t, n)) => {
                if l == r {
                    return true;
                }
                let te = self.expand(l);
                let ue = self.expand(r);
                let v = self.rewriteonce(l);
                let w = self.rewriteonce(r);
                if &v != l {
                    self.equalentities(&v, r)
                } else if &w != r {
                    self.equalentities(l, &w)
                } else if &te != l {
                    self.equalentities(&te, r)
                } else if &ue != r {
                    self.equalentities(l, &ue)
                } else {
                    s == t && self.equalentitieslist(m, n)
                }
            }
            (Entity::App(..), x) => {
                if l == x {
                    return true;
                }
                let te = self.expand(l);
                let v = self.rewriteonce(l);
                if &v != l {
                    self.equalentities(&v, x)
                } else if &te != l {
                    self.equalentities(&te, x)
                } else {
                    false
                }
            }
            (x, Entity::App(..)) => {
                if x == r {
                    return true;
                }
                let te = self.expand(r);
                if &te != r {
                    self.equalentities(x, &te)
                } else {
                    false
                }
            }
            _ => l == r,
        }
    }

    fn equalentitieslist(&mut self, l: &[Argument], m: &[Argument]) -> bool {
        if l.len() != m.len() {
            return false;
        }
        for (a, b) in l.iter().zip(m) {
            let ok = match (a, b) {
                (Argument::Ent(x), Argument::Ent(y)) => self.equalentities(x, y),
                _ => {
                    a == b || {
                        let ea = self.expand2(a);
                        let eb = self.expand2(b);
                        self.equivlambdas(&ea, &eb)
                    }
                }
            };
            if !ok {
                return false;
            }
        }
        true
    }

    // sort computation

    pub fn entitytype(&mut self, e: &Entity) -> EntitySort {
        match e {
            Entity::Atom(id) if id.ns == 0 => match self.lookup(&id.name) {
                Some((Sort::Ent(t), _)) => t,
                _ => {
                    self.saypause(&format!("Did not find entity {} (entitytype)", id.name));
                    EntitySort::Error
                }
            },
            Entity::App(h, m) if h.ns == 0 => match self.lookup(&h.name) {
                Some((Sort::Abst(f), _)) => self.typematchcomp(&f, m),
                _ => {
                    self.saypause(&format!("Did not find abstraction {} (entitytype)", h.name));
                    EntitySort::Error
                }
            },
            _ => EntitySort::Error,
        }
    }

    pub fn argtype(&mut self, a: &Argument) -> Sort {
        match a {
            Argument::Ent(x) => Sort::Ent(self.entitytype(x)),
            Argument::Abst(id) => match self.stringtype(&id.name) {
                Some(s @ Sort::Abst(_)) => s,
                _ => {
                    self.saypause(&format!("Did not find abstraction {} (argtype)", id.name));
                    Sort::Ent(EntitySort::Error)
                }
            },
            Argument::Lambda(f) => Sort::Abst(f.clone()),
        }
    }

    pub(crate) fn typed_args(&mut self, m: &[Argument]) -> Vec<Entry> {
        m.iter()
            .map(|x| {
                let s = self.argtype(x);
                Entry::new(0, x.clone(), s)
            })
            .collect()
    }

    /// Output sort of an abstraction applied to arguments.
    pub fn typematchcomp(&mut self, f: &[Entry], m: &[Argument]) -> EntitySort {
        let l = self.renamespace(f);
        let args = self.typed_args(m);
        self.typematchcomp0(l, &args, true)
    }

    pub(crate) fn typematchcomp0(&mut self, mut l: Frame, m: &[Entry], loud: bool) -> EntitySort {
        let mut m = m;
        loop {
            match (l.as_slice(), m) {
                ([last], []) => {
                    return match &last.sort {
                        Sort::Ent(t) => self.etypesubs(&UNKNOWN_ARG, &UNKNOWN_ARG, t),
                        _ => EntitySort::Error,
                    };
                }
                ([first, ..], [given, rest @ ..]) => {
                    if !self.equaltypes(false, &first.sort, &given.sort) {
                        if loud {
                            self.mismatch(first, given);
                        }
                        return EntitySort::Error;
                    }
                    let (a, b) = (first.arg.clone(), given.arg.clone());
                    let tail = l[1..].to_vec();
                    l = self.subst_entries(&a, &b, &tail);
                    m = rest;
                }
                _ => return EntitySort::Error,
            }
        }
    }

    /// Same matching, but the final sort may be an abstraction sort.
    pub(crate) fn typematchcomp1(&mut self, mut l: Frame, m: &[Entry]) -> Sort {
        let mut m = m;
        loop {
            match (l.as_slice(), m) {
                ([last], []) => {
                    let t = last.sort.clone();
                    return self.typesubs(&UNKNOWN_ARG, &UNKNOWN_ARG, &t);
                }
                ([first, ..], [given, rest @ ..]) => {
                    if !self.equaltypes(false, &first.sort, &given.sort) {
                        self.mismatch(first, given);
                        return Sort::Ent(EntitySort::Error);
                    }
                    let (a, b) = (first.arg.clone(), given.arg.clone());
                    let tail = l[1..].to_vec();
                    l = self.subst_entries(&a, &b, &tail);
                    m = rest;
                }
                _ => return Sort::Ent(EntitySort::Error),
            }
        }
    }

    pub(crate) fn silenttypematchcomp0(&mut self, l: Frame, m: &[Entry]) -> EntitySort {
        self.typematchcomp0(l, m, false)
    }

    fn mismatch(&mut self, want: &Entry, got: &Entry) {
        let msg = format!(
            "Type {} of {} does not match type {} of {}",
            self.display6(&want.sort),
            self.display4(&want.arg),
            self.display6(&got.sort),
            self.display4(&got.arg)
        );
        self.saypause(&msg);
    }

    // declaration checking against the current context

    pub(crate) fn deccheck1(&mut self, t: &EntitySort) -> bool {
        match t {
            EntitySort::That(p) | EntitySort::In(p) => self.deccheck2(p),
            EntitySort::Error => false,
            _ => true,
        }
    }

    pub(crate) fn deccheck2(&mut self, e: &Entity) -> bool {
        match e {
            Entity::Unknown => true,
            Entity::Error => false,
            Entity::Atom(id) => {
                id.ns != 0 || {
                    let s = self.lookup(&id.name);
                    if s.is_none() {
                        self.saypause(&format!("Did not find entity {} (deccheck2)", id.name));
                    }
                    matches!(s, Some((Sort::Ent(_), _)))
                }
            }
            Entity::App(h, m) => {
                let head = h.ns != 0 || {
                    let s = self.lookup(&h.name);
                    if s.is_none() {
                        self.saypause(&format!("Did not find abstraction {} (deccheck 2)", h.name));
                    }
                    matches!(s, Some((Sort::Abst(_), _)))
                };
                head && m.iter().all(|a| self.deccheck3(a))
            }
        }
    }

    pub(crate) fn deccheck3(&mut self, a: &Argument) -> bool {
        match a {
            Argument::Ent(e) => self.deccheck2(e),
            Argument::Abst(id) => {
                id.ns != 0 || {
                    let s = self.lookup(&id.name);
                    if s.is_none() {
                        self.saypause(&format!("Did not find abstraction {} (deccheck3)", id.name));
                    }
                    matches!(s, Some((Sort::Abst(_), _)))
                }
            }
            Argument::Lambda(f) => self.deccheck4(f),
        }
    }

    pub(crate) fn deccheck4(&mut self, f: &[Entry]) -> bool {
        f.iter().all(|e| self.deccheck3(&e.arg) && self.deccheck5(&e.sort))
    }

    pub(crate) fn deccheck5(&mut self, s: &Sort) -> bool {
        match s {
            Sort::Ent(t) => self.deccheck1(t),
            Sort::Abst(f) => self.deccheck4(f),
        }
    }

    /// Checks that the entity in `that`/`in` has sort prop/type.
    pub fn typecheck(&mut self, t: &EntitySort) -> bool {
        match t {
            EntitySort::That(p) => {
                let ok = self.entitytype(p) == EntitySort::Prop;
                if !ok {
                    let msg = format!("{} is not of type prop (typecheck)", self.display2(p));
                    self.saypause(&msg);
                }
                ok
            }
            EntitySort::In(p) => {
                let ok = self.entitytype(p) == EntitySort::Type;
                if !ok {
                    let msg = format!("{} is not of type 'type' (typecheck)", self.display2(p));
                    self.saypause(&msg);
                }
                ok
            }
            EntitySort::Error => false,
            _ => true,
        }
    }

    // dependencies on next-move variables

    pub fn deps(&mut self, e: &Entity) -> Vec<Argument> {
        match e {
            Entity::Atom(id) if id.ns == 0 => {
                let a = Argument::Ent(e.clone());
                if !self.isnew(&a) {
                    return Vec::new();
                }
                let mut out = Vec::new();
                if self.isvariable(&a) {
                    out.push(a.clone());
                }
                let t = self.argtype(&a);
                out.extend(self.typedeps(&t));
                out
            }
            Entity::App(h, l) if h.ns == 0 => {
                let a = Argument::Abst(h.clone());
                if !self.isnew(&a) {
                    return self.depsarg(l);
                }
                let mut out = Vec::new();
                if self.isvariable(&a) {
                    out.push(a.clone());
                }
                let t = self.argtype(&a);
                out.extend(self.typedeps(&t));
                out.extend(self.depsarg(l));
                out
            }
            _ => Vec::new(),
        }
    }

    pub fn depsarg(&mut self, l: &[Argument]) -> Vec<Argument> {
        let mut out = Vec::new();
        for a in l {
            match a {
                Argument::Ent(x) => out.extend(self.deps(x)),
                Argument::Abst(id) if id.ns == 0 => {
                    if self.isnew(a) {
                        if self.isvariable(a) {
                            out.push(a.clone());
                        }
                        let t = self.argtype(a);
                        out.extend(self.typedeps(&t));
                    }
                }
                Argument::Lambda(f) => {
                    out.extend(self.typedeps(&Sort::Abst(f.clone())));
                    return out;
                }
                _ => {}
            }
        }
        out
    }

    pub fn typedeps(&mut self, t: &Sort) -> Vec<Argument> {
        match t {
            Sort::Ent(EntitySort::That(x)) | Sort::Ent(EntitySort::In(x)) => self.deps(x),
            Sort::Ent(_) => Vec::new(),
            Sort::Abst(f) => match f.as_slice() {
                [Entry { arg: Argument::Ent(x), sort, .. }] => {
                    let mut out = self.deps(x);
                    out.extend(self.typedeps(sort));
                    out
                }
                [first, rest @ ..] if !rest.is_empty() => {
                    let mut out = self.typedeps(&first.sort);
                    out.extend(self.typedeps(&Sort::Abst(rest.to_vec())));
                    out
                }
                _ => Vec::new(),
            },
        }
    }

    fn typerigid0(&self, weak: bool, a: &Argument) -> bool {
        match a {
            Argument::Ent(Entity::Atom(id)) if id.ns == 0 => {
                (weak && !self.isdefvar(a)) || !self.isnew(a)
            }
            Argument::Ent(Entity::App(h, l)) if h.ns == 0 => {
                let head = Argument::Abst(h.clone());
                (weak && !self.isdefvar(&head) && l.iter().all(|x| self.typerigid0(false, x)))
                    || (!self.isnew(&head) && l.iter().all(|x| self.typerigid0(true, x)))
            }
            Argument::Abst(id) if id.ns == 0 => (weak && !self.isdefvar(a)) || !self.isnew(a),
            _ => false,
        }
    }

    /// All sorts in the term can be deduced from its shape.
    pub fn typerigid(&self, e: &Entity) -> bool {
        self.typerigid0(false, &Argument::Ent(e.clone()))
    }

    // declaration commands

    fn not_fresh(&self, s: &str) -> bool {
        reserved(s) || self.lookup(s).is_some()
    }

    /// Postulates an entity in the next move.
    pub fn declare(&mut self, s: &str, t: &EntitySort) {
        if self.not_fresh(s) {
            self.saypause(&format!("Identifier {s} is not fresh"));
        } else if !self.typecheck(t) {
            self.saypause("Type check fails");
        } else {
            let age = self.newserial();
            self.moves[0].push(Entry::new(
                age,
                Argument::Ent(Entity::Atom(Ident::user(s))),
                Sort::Ent(t.clone()),
            ));
            self.showdec(s);
        }
    }

    fn isordered(&self, l: &[Argument]) -> bool {
        let age = |a: &Argument| self.next_age(a).unwrap_or(0);
        l.windows(2).all(|w| age(&w[0]) != 0 && age(&w[0]) < age(&w[1]))
    }

    fn worlditem(&mut self, a: &Argument) -> Entry {
        let e = self.next_entry(a).cloned().unwrap_or_else(|| {
            Entry::new(0, a.clone(), Sort::Ent(EntitySort::Error))
        });
        let sort = self.typesubs(&UNKNOWN_ARG, &UNKNOWN_ARG, &e.sort);
        Entry::new(e.age, a.clone(), sort)
    }

    /// The argument list as a frame, with implicit arguments inserted.
    pub(crate) fn worldof(&mut self, l: &[Argument]) -> Frame {
        let items: Vec<Entry> = l.iter().map(|a| self.worlditem(a)).collect();
        self.guardedexpandlist(&items)
    }

    /// Runs `f` with the next move replaced by `w`.
    fn with_next_move<R>(&mut self, w: Frame, f: impl FnOnce(&mut Self) -> R) -> R {
        let saved = std::mem::replace(&mut self.moves[0], w);
        let r = f(self);
        self.moves[0] = saved;
        r
    }

    /// Checks a recorded abstraction sort again, with its binders as the
    /// next move.
    pub fn recheck(&mut self, f: &[Entry]) -> bool {
        let mut f = f.to_vec();
        for i in 0..f.len().saturating_sub(1) {
            let old = f[i].arg.clone();
            let new = match &old {
                Argument::Ent(Entity::Atom(id)) => Argument::Ent(Entity::Atom(Ident::user(&id.name))),
                Argument::Abst(id) => Argument::Abst(Ident::user(&id.name)),
                _ => return false,
            };
            f[i].arg = new.clone();
            for e in &mut f[i + 1..] {
                *e = Entry::new(e.age, self.argsubs(&old, &new, &e.arg), self.typesubs(&old, &new, &e.sort));
            }
        }
        let Some((out, binders)) = f.split_last() else {
            return false;
        };
        self.with_next_move(binders.to_vec(), |me| {
            let w = binders.to_vec();
            if !me.deccheck4(&w) {
                return false;
            }
            for e in &w {
                if let Sort::Ent(t) = &e.sort {
                    if !me.typecheck(t) {
                        return false;
                    }
                }
            }
            let Sort::Ent(t) = &out.sort else {
                return false;
            };
            match &out.arg {
                Argument::Ent(Entity::Unknown) => me.typecheck(t),
                Argument::Ent(body) => {
                    let got = me.entitytype(body);
                    me.deccheck2(body) && me.equaltypes(false, &Sort::Ent(got), &out.sort)
                }
                _ => false,
            }
        })
    }

    fn check_arglist(&mut self, l: &[Argument]) -> bool {
        if !l.iter().all(|a| self.isvariable(a)) {
            self.saypause("Some argument is not variable");
            return false;
        }
        if !self.isordered(l) {
            self.saypause("Arguments are in the wrong order");
            return false;
        }
        true
    }

    fn record_in_last(&mut self, e: Entry) {
        self.moves[1].push(e);
    }

    /// Postulates an abstraction (or a constant if `l` is empty) in the last move.
    pub fn construct(&mut self, s: &str, l: &[Argument], t: &EntitySort) {
        if !self.check_arglist(l) {
            return;
        }
        let w = self.worldof(l);
        let t = self.dotfix(&w, t);
        if self.not_fresh(s) {
            self.saypause(&format!("Identifier {s} is not fresh"));
            return;
        }
        if l.is_empty() {
            let tt = self.etypesubs(&UNKNOWN_ARG, &UNKNOWN_ARG, &t);
            if !self.with_next_move(Vec::new(), |me| me.typecheck(&tt)) {
                self.saypause("Type check fails in declaration of constant");
            } else {
                let age = self.newserial();
                self.record_in_last(Entry::new(
                    age,
                    Argument::Ent(Entity::Atom(Ident::user(s))),
                    Sort::Ent(tt),
                ));
                self.showdec_constant(s);
            }
            return;
        }
        let tt = self.etypesubs(&UNKNOWN_ARG, &UNKNOWN_ARG, &t);
        let w = self.worldof(l);
        let ok = self.with_next_move(w, |me| {
            let w = me.moves[0].clone();
            me.deccheck4(&w) && me.typecheck(&tt)
        });
        if !ok {
            self.saypause("Dependency or type check failure");
            return;
        }
        let age = self.newserial();
        let mut frame = self.worldof(l);
        let out = self.typesubs(&UNKNOWN_ARG, &UNKNOWN_ARG, &Sort::Ent(t));
        frame.push(Entry::new(0, UNKNOWN_ARG, out));
        let frame = self.renamespace(&frame);
        let sort = reindex_sort(&Sort::Abst(frame));
        self.record_in_last(Entry::new(age, Argument::Abst(Ident::user(s)), sort));
        self.showdec(s);
    }

    /// Defines an abstraction in the last move by an entity body.
    pub fn define(&mut self, s: &str, l: &[Argument], t: &Entity) {
        if !self.check_arglist(l) {
            return;
        }
        let t0 = t.clone();
        let w = self.worldof(l);
        let t = self.dotfix2(&w, t);
        if self.not_fresh(s) {
            self.saypause(&format!("Identifier {s} is not fresh"));
            return;
        }
        let t2 = self.entsubs(&UNKNOWN_ARG, &UNKNOWN_ARG, &t);
        let thetype = self.define_sort(l, &t0);
        let w = self.worldof(l);
        let ok = self.with_next_move(w, |me| {
            let w = me.moves[0].clone();
            me.deccheck4(&w) && me.deccheck1(&thetype) && me.deccheck2(&t2)
        });
        if !ok {
            self.saypause("Type check or dependency failure");
            return;
        }
        let body = self.entsubs(&UNKNOWN_ARG, &UNKNOWN_ARG, &t);
        let tt = self.fullrewrite(&body);
        let thetype = self.define_sort(l, &t0);
        let mut frame = self.worldof(l);
        frame.push(Entry::new(0, Argument::Ent(tt), Sort::Ent(thetype)));
        let frame = self.renamespace(&frame);
        let sort = reindex_sort(&Sort::Abst(frame));
        self.record_in_last(Entry::new(0, Argument::Abst(Ident::user(s)), sort));
        self.showdec(s);
    }

    fn define_sort(&mut self, l: &[Argument], t0: &Entity) -> EntitySort {
        let w = self.worldof(l);
        let et = self.entitytype(t0);
        let et = self.etypesubs(&UNKNOWN_ARG, &UNKNOWN_ARG, &et);
        self.dotfix(&w, &et)
    }

    /// Display a declaration with its move.
    pub fn showdec(&mut self, s: &str) {
        match self.lookup(s) {
            None => self.saypause(&format!("{s} is not declared")),
            Some((t, d)) => self.show_sort(s, &t, d),
        }
    }

    /// A constant is shown as a frame with no inputs.
    fn showdec_constant(&mut self, s: &str) {
        match self.lookup(s) {
            Some((Sort::Ent(t), d)) => {
                let frame = Sort::Abst(vec![Entry::new(0, UNKNOWN_ARG, Sort::Ent(t))]);
                self.show_sort(s, &frame, d);
            }
            _ => self.showdec(s),
        }
    }

    fn show_sort(&mut self, s: &str, t: &Sort, d: usize) {
        let shown = self.display6(&reindex_sort(t));
        let line = format!(
            "{s}:  {shown} {{move {}{}}}\n\n",
            self.moves.len() - 1 - d,
            self.worldname(d)
        );
        self.say1(&line);
    }
}
