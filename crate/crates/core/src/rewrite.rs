//! Pattern matching, rule application and the rule-recording commands.

use crate::session::{Rule, Session};
use crate::term::{
    deent, negate_entity, reserved, Argument, Entity, EntitySort, Entry, Ident, Sort,
};

/// Pattern variable bindings.
pub type Bindings = Vec<(Argument, Argument)>;

fn first_binding<'a>(s: &Argument, l: &'a [(Argument, Argument)]) -> Option<&'a Argument> {
    l.iter().find(|(k, _)| k == s).map(|(_, v)| v)
}

fn drop_key(s: &Argument, l: Bindings) -> Bindings {
    l.into_iter().filter(|(k, _)| k != s).collect()
}

impl Session {
    /// Matches `pattern` against `term`. `None` is failure.
    pub fn ematch(&mut self, b: bool, pattern: &Entity, term: &Entity) -> Option<Bindings> {
        match (pattern, term) {
            (Entity::Atom(id), t) => {
                if id.ns != 0 {
                    Some(vec![(Argument::Ent(pattern.clone()), Argument::Ent(t.clone()))])
                } else if pattern == t {
                    Some(Vec::new())
                } else {
                    None
                }
            }
            (Entity::App(s, l), Entity::App(t, _)) if s.ns == t.ns => {
                let tt = if b { self.headrewrite(term) } else { term.clone() };
                match &tt {
                    Entity::App(h, m) if h.name == s.name => self.argmatch(l, m),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    fn argmatch(&mut self, l: &[Argument], m: &[Argument]) -> Option<Bindings> {
        match (l, m) {
            ([], []) => Some(Vec::new()),
            ([], _) | (_, []) => None,
            ([Argument::Ent(x), lr @ ..], [Argument::Ent(y), mr @ ..]) => {
                let head = self.ematch(true, x, y);
                let rest = self.argmatch(lr, mr);
                self.mergematch(head, rest)
            }
            ([Argument::Abst(s), lr @ ..], [t, mr @ ..]) => {
                if s.ns != 0 {
                    let rest = self.argmatch(lr, mr);
                    self.mergematch(Some(vec![(l[0].clone(), t.clone())]), rest)
                } else if &l[0] == t {
                    self.argmatch(lr, mr)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn mergematch(&mut self, x: Option<Bindings>, y: Option<Bindings>) -> Option<Bindings> {
        let (x, y) = (x?, y?);
        if x.is_empty() {
            return Some(y);
        }
        if y.is_empty() {
            return Some(x);
        }
        let m = self.mergematch0(&x, &y);
        if m.is_empty() {
            None
        } else {
            Some(m)
        }
    }

    fn mergematch0(&mut self, l: &[(Argument, Argument)], m: &[(Argument, Argument)]) -> Bindings {
        if l.is_empty() || m.is_empty() {
            return Vec::new();
        }
        let (s, t) = &l[0];
        let rest = &l[1..];
        let found = first_binding(s, rest).or_else(|| first_binding(s, m)).cloned();
        match found {
            None => {
                let mut out = vec![(s.clone(), t.clone())];
                if !rest.is_empty() {
                    out.extend(self.mergematch0(rest, m));
                } else {
                    out.extend(m.iter().cloned());
                }
                out
            }
            Some(n) => {
                if !self.equalarguments(t, &n) {
                    return Vec::new();
                }
                let dl = drop_key(s, rest.to_vec());
                let dm = drop_key(s, m.to_vec());
                let mut out = vec![(s.clone(), t.clone())];
                if dl.is_empty() && dm.is_empty() {
                } else if !dl.is_empty() {
                    let merged = self.mergematch0(rest, m);
                    out.extend(drop_key(s, merged));
                } else {
                    out.extend(dm);
                }
                out
            }
        }
    }

    fn equalarguments(&mut self, a: &Argument, b: &Argument) -> bool {
        match (a, b) {
            (Argument::Ent(x), Argument::Ent(y)) => self.equalentities(x, y),
            (Argument::Lambda(_), Argument::Lambda(_)) => self.equivlambdas(a, b),
            _ => a == b,
        }
    }

    fn matchsubs(&mut self, pattern: &Entity, target: &Entity, body: &Entity) -> Entity {
        match self.ematch(false, pattern, body) {
            None => body.clone(),
            Some(m) => {
                let mut out = target.clone();
                for (s, t) in m.iter().rev() {
                    out = self.entsubs(s, t, &out);
                }
                out
            }
        }
    }

    fn rewriteoncewithalist(&mut self, rules: &[Rule], t: &Entity) -> Entity {
        for r in rules {
            if self.ematch(false, &r.pattern, t).is_some() {
                return self.matchsubs(&r.pattern, &r.target, t);
            }
        }
        t.clone()
    }

    /// One application of the first matching rule visible from the last move.
    pub fn rewriteonce(&mut self, t: &Entity) -> Entity {
        if !self.rewriting || self.rewrites[1..].iter().all(|l| l.is_empty()) {
            return t.clone();
        }
        let lists = self.rewrites[1..].to_vec();
        for l in &lists {
            let u = self.rewriteoncewithalist(l, t);
            if &u != t {
                return u;
            }
        }
        t.clone()
    }

    /// Rewrites arguments, then the whole term, until nothing changes.
    pub fn fullrewrite(&mut self, e: &Entity) -> Entity {
        match e {
            Entity::App(h, l) if h.ns == 0 => {
                let l1: Vec<Argument> = l
                    .iter()
                    .map(|a| match a {
                        Argument::Ent(x) => Argument::Ent(self.fullrewrite(x)),
                        x => x.clone(),
                    })
                    .collect();
                let t1 = self.rewriteonce(&Entity::App(h.clone(), l1));
                if &t1 == e {
                    t1
                } else {
                    self.fullrewrite(&t1)
                }
            }
            Entity::Atom(id) if id.ns == 0 => {
                let t1 = self.rewriteonce(e);
                if &t1 == e {
                    t1
                } else {
                    self.fullrewrite(&t1)
                }
            }
            x => x.clone(),
        }
    }

    /// Rewrites at the top of the term only.
    pub fn headrewrite(&mut self, e: &Entity) -> Entity {
        let mut cur = e.clone();
        while matches!(&cur, Entity::App(h, _) if h.ns == 0) {
            let t1 = self.rewriteonce(&cur);
            if t1 == cur {
                break;
            }
            cur = t1;
        }
        cur
    }

    fn goodrewritelist(&mut self, l: &[Argument]) -> bool {
        if l.len() < 3 {
            return false;
        }
        let (p, q, r) = (&l[l.len() - 3], &l[l.len() - 2], &l[l.len() - 1]);
        let t = self.argtype(q);
        let notvararg = match q {
            Argument::Ent(Entity::Atom(id)) => id.ns != 0,
            Argument::Ent(_) => true,
            _ => false,
        };
        if !notvararg || !self.typerigid(&deent(q)) {
            return false;
        }
        let rt = self.argtype(r);
        if !self.equaltypes(false, &t, &rt) || !self.isvariable(p) {
            return false;
        }
        let pt = self.argtype(p);
        let pred = Sort::Abst(vec![
            Entry::new(-1, Argument::Ent(Entity::Atom(Ident::new("???", 1))), t),
            Entry::new(-1, Argument::Ent(Entity::Unknown), Sort::Ent(EntitySort::Prop)),
        ]);
        if !self.equaltypes(true, &pt, &pred) {
            return false;
        }
        let dq = self.depsarg(std::slice::from_ref(q));
        if dq.contains(p) {
            return false;
        }
        if !l[..l.len() - 3].iter().all(|x| dq.contains(x)) {
            return false;
        }
        let dq = self.depsarg(std::slice::from_ref(q));
        let dr = self.depsarg(std::slice::from_ref(r));
        dr.iter().all(|x| dq.contains(x))
    }

    /// Pattern and target read off the sort of a witness function.
    fn rule_from_witness(&mut self, s: &str) -> Option<(Entity, Entity)> {
        fn unary_that(e: &Entry) -> Option<&Argument> {
            match &e.sort {
                Sort::Ent(EntitySort::That(Entity::App(_, args))) if args.len() == 1 => {
                    Some(&args[0])
                }
                _ => None,
            }
        }
        let sort = self.stringtype(s)?;
        let Sort::Abst(f) = sort else {
            return None;
        };
        let (last, init) = f.split_last()?;
        let pattern = init.iter().find_map(unary_that)?;
        let target = unary_that(last)?;
        Some((deent(pattern), deent(target)))
    }

    fn pred_name(p: &Argument) -> String {
        match p {
            Argument::Abst(id) if id.ns == 0 => id.name.clone(),
            _ => "?!?!".into(),
        }
    }

    fn rewrite_preamble(&mut self, l: &[Argument], v: &str) -> Option<(String, Argument, Argument)> {
        if reserved(v) || self.lookup(v).is_some() {
            self.saypause(&format!("Identifier {v} is not fresh"));
            return None;
        }
        if !self.goodrewritelist(l) {
            self.saypause("Proposed rewrite list does not sort check");
            return None;
        }
        let (p, q, r) = (&l[l.len() - 3], &l[l.len() - 2], &l[l.len() - 1]);
        let pn = Self::pred_name(p);
        let that_q = EntitySort::That(Entity::App(Ident::user(&pn), vec![q.clone()]));
        self.declare(v, &that_q);
        Some((pn, p.clone(), r.clone()))
    }

    fn record_rule(&mut self, witness: &str, pattern: &Entity, target: &Entity) {
        self.rewrites[1].insert(
            0,
            Rule {
                witness: witness.to_string(),
                pattern: negate_entity(pattern),
                target: negate_entity(target),
            },
        );
    }

    /// Constructs a witness function for a rule and records the rule.
    pub fn rewritec(&mut self, s: &str, l: &[Argument], v: &str) {
        if !self.rewriting {
            self.saypause("Rewriting is turned off");
            return;
        }
        if reserved(s) || self.lookup(s).is_some() {
            self.saypause(&format!("Identifier {s} is not fresh"));
            return;
        }
        let Some((pn, p, r)) = self.rewrite_preamble(l, v) else {
            return;
        };
        let mut args = l[..l.len() - 3].to_vec();
        args.push(p);
        args.push(Argument::Ent(Entity::Atom(Ident::user(v))));
        let that_r = EntitySort::That(Entity::App(Ident::user(&pn), vec![r]));
        self.construct(s, &args, &that_r);
        match self.rule_from_witness(s) {
            None => self.saypause(&format!("Construction of {s} failed for some reason")),
            Some((pat, tgt)) => self.record_rule(s, &pat, &tgt),
        }
    }

    /// Checks that a declared function witnesses a rule and records it.
    pub fn rewrited(&mut self, s: &str, l: &[Argument], v: &str) {
        if !self.rewriting {
            self.say("Rewriting is turned off");
            return;
        }
        let Some(sort) = self.stringtype(s) else {
            self.saypause(&format!("Evidence function {s} is not declared"));
            return;
        };
        let Some((pn, p, r)) = self.rewrite_preamble(l, v) else {
            return;
        };
        let mut args = l[..l.len() - 3].to_vec();
        args.push(p);
        args.push(Argument::Ent(Entity::Atom(Ident::user(v))));
        let frame = self.getabstype(&sort);
        let args = self.guardedfixarglist(&frame, &args);
        let got = self.entitytype(&Entity::App(Ident::user(s), args));
        let want = EntitySort::That(Entity::App(Ident::user(&pn), vec![r]));
        if self.equaltypes(false, &Sort::Ent(got), &Sort::Ent(want)) {
            self.say("Rewrite demonstration succeeded");
            match self.rule_from_witness(s) {
                None => self.saypause("This error message should never occur"),
                Some((pat, tgt)) => {
                    self.rewrites[1].retain(|rule| rule.witness != s);
                    self.record_rule(s, &pat, &tgt);
                }
            }
        } else {
            self.saypause("Rewrite demonstration failed");
        }
    }
}
