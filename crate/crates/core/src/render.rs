//! Printing of terms, sorts and moves, and the margin-driven line breaker.

use std::collections::VecDeque;

use crate::session::{Rule, Session};
use crate::term::{is_dotted, Argument, Entity, EntitySort, Entry, Ident, Sort};

/// Integer rendering with `~` for the minus sign.
pub fn makestring(n: i64) -> String {
    if n < 0 {
        format!("~{}", -n)
    } else {
        n.to_string()
    }
}

pub fn despace(s: &str) -> &str {
    s.trim_start_matches(' ')
}

fn indents(n: i64) -> String {
    if n <= 0 {
        String::new()
    } else {
        "     ".repeat(n as usize)
    }
}

fn ident_text(id: &Ident) -> String {
    if id.ns == 0 {
        id.name.clone()
    } else {
        format!("{}_{}", id.name, makestring(id.ns))
    }
}

fn bracket_delta(c: char) -> i64 {
    match c {
        '[' => 1,
        ']' => -1,
        _ => 0,
    }
}

fn breaks_at(c: char, rest: &VecDeque<char>) -> bool {
    matches!(c, ',' | ':' | ']') || (c == ' ' && rest.front() != Some(&' '))
}

fn starts_with(q: &VecDeque<char>, p: &[char]) -> bool {
    q.len() >= p.len() && p.iter().enumerate().all(|(i, c)| q[i] == *c)
}

/// First display line of `s` and the change in bracket depth it causes.
pub fn tolinebreak(margin: i64, s: &str) -> (String, i64) {
    let mut q: VecDeque<char> = s.chars().collect();
    let mut out = String::new();
    let mut n = margin;
    let mut delta = 0;
    loop {
        if q.is_empty() {
            return (out, delta);
        }
        for close in [&[']', ')', ','][..], &[']', ')', ')'][..]] {
            if starts_with(&q, close) {
                out.extend(close);
                return (out, delta - 1);
            }
        }
        if starts_with(&q, &[']', ')']) {
            out.push_str("])");
            return (out, delta - 1);
        }
        if starts_with(&q, &['\n', '\n']) {
            q.drain(..2);
            out.push_str("\n\n");
            n = 0;
            continue;
        }
        if n == 0 {
            let c = q.pop_front().unwrap_or(' ');
            delta += bracket_delta(c);
            out.push(c);
            if breaks_at(c, &q) {
                return (out, delta);
            }
            continue;
        }
        if starts_with(&q, &[' ', ' ']) {
            q.drain(..2);
            out.push_str("  ");
            n -= 2;
            continue;
        }
        if q.len() >= 3 && q[1] == ' ' && q[2] == ' ' {
            delta += bracket_delta(q[0]);
            q.remove(1);
            continue;
        }
        if starts_with(&q, &['\n', ' ']) {
            q.remove(1);
            continue;
        }
        if q[0] == '\n' {
            q[0] = ' ';
            continue;
        }
        let c = q.pop_front().unwrap_or(' ');
        delta += bracket_delta(c);
        out.push(c);
        if c == ']' {
            return (out, delta);
        }
        n -= 1;
    }
}

/// Text remaining after the first display line.
pub fn restlinebreak(margin: i64, s: &str) -> String {
    let mut q: VecDeque<char> = s.chars().collect();
    let mut n = margin;
    loop {
        if q.is_empty() {
            return String::new();
        }
        for close in [&[']', ')', ','][..], &[']', ')', ')'][..], &[']', ')'][..]] {
            if starts_with(&q, close) {
                q.drain(..close.len());
                return q.into_iter().collect();
            }
        }
        if starts_with(&q, &['\n', '\n']) {
            q.drain(..2);
            n = 0;
            continue;
        }
        if n == 0 {
            let c = q.pop_front().unwrap_or(' ');
            if breaks_at(c, &q) {
                return q.into_iter().collect();
            }
            continue;
        }
        if starts_with(&q, &[' ', ' ']) {
            q.drain(..2);
            n -= 2;
            continue;
        }
        if q.len() >= 3 && q[1] == ' ' && q[2] == ' ' {
            q.remove(1);
            continue;
        }
        if starts_with(&q, &['\n', ' ']) {
            q.remove(1);
            continue;
        }
        if q[0] == '\n' {
            q[0] = ' ';
            continue;
        }
        let c = q.pop_front().unwrap_or(' ');
        if c == ']' {
            return q.into_iter().collect();
        }
        n -= 1;
    }
}

impl Session {
    pub(crate) fn indents(&self) -> String {
        indents(self.moves.len() as i64 - 2 + self.extra_indents)
    }

    fn initial(&mut self, s: &str) -> String {
        let (head, delta) = tolinebreak(self.margin, s);
        self.extra_indents += delta;
        head
    }

    /// Console layout: continuation lines are indented to the current move.
    pub fn prettyprint(&mut self, s: &str) -> String {
        let mut out = String::new();
        let mut s = s.to_string();
        loop {
            let i = self.indents();
            let t = format!("{i}{}", despace(&s));
            out.push_str(&self.initial(&t));
            let rest = restlinebreak(self.margin, &t);
            if rest.is_empty() {
                return out;
            }
            out.push_str("\n   ");
            out.push_str(&i);
            s = rest;
        }
    }

    /// Log layout: continuation lines become `>>` comments.
    pub fn prettyprint2(&mut self, s: &str) -> String {
        let mut out = String::new();
        let mut s = s.to_string();
        loop {
            let i = self.indents();
            let t = format!("{i}{}", despace(&s));
            out.push_str(&self.initial(&t));
            let rest = restlinebreak(self.margin, &t);
            if rest.is_empty() {
                return out;
            }
            out.push_str("\n>>   ");
            s = rest;
        }
    }

    /// Arguments shown for an application, dropping implicit ones.
    fn explicitlist<'a>(&self, h: &Ident, l: &'a [Argument]) -> Vec<&'a Argument> {
        let all = || l.iter().collect();
        if self.show_implicit || h.ns != 0 {
            return all();
        }
        let Some((Sort::Abst(f), _)) = self.lookup(&h.name) else {
            return all();
        };
        let mut out = Vec::new();
        for (i, u) in l.iter().enumerate() {
            let Some(e) = f.get(i) else {
                return all();
            };
            let dotted = match &e.arg {
                Argument::Ent(Entity::Atom(id)) | Argument::Abst(id) => is_dotted(&id.name),
                _ => false,
            };
            if !dotted {
                out.push(u);
            }
        }
        out
    }

    pub fn display1(&self, t: &EntitySort) -> String {
        match t {
            EntitySort::Obj => "obj".into(),
            EntitySort::Prop => "prop".into(),
            EntitySort::Type => "type".into(),
            EntitySort::That(p) => format!("that {}", self.display2(p)),
            EntitySort::In(p) => format!("in {}", self.display2(p)),
            EntitySort::Error => "error".into(),
        }
    }

    pub fn display2(&self, e: &Entity) -> String {
        match e {
            Entity::Atom(id) => ident_text(id),
            Entity::App(h, l) if l.is_empty() => ident_text(h),
            Entity::App(h, ll) => {
                let l = self.explicitlist(h, ll);
                if l.len() == 2 && matches!(l[0], Argument::Ent(_)) {
                    format!(
                        "({} {} {})",
                        self.display4(l[0]),
                        ident_text(h),
                        self.display4(l[1])
                    )
                } else {
                    format!("{}({}", ident_text(h), self.display3(&l))
                }
            }
            Entity::Unknown => "---".into(),
            Entity::Error => "???".into(),
        }
    }

    fn display3(&self, l: &[&Argument]) -> String {
        if l.is_empty() {
            return "*?*?)".into();
        }
        let parts: Vec<String> = l.iter().map(|a| self.display4(a)).collect();
        format!("{})", parts.join(","))
    }

    pub fn display4(&self, a: &Argument) -> String {
        match a {
            Argument::Ent(x) => self.display2(x),
            Argument::Abst(id) => ident_text(id),
            Argument::Lambda(f) => format!("[{}", self.display5(f)),
        }
    }

    fn display5(&self, f: &[Entry]) -> String {
        if f.is_empty() {
            return "(?*?*?*?)".into();
        }
        let mut out = String::new();
        for (i, e) in f.iter().enumerate() {
            out.push('(');
            out.push_str(&self.display4(&e.arg));
            out.push(':');
            out.push_str(&self.display6(&e.sort));
            match f.len() - i - 1 {
                0 => out.push_str(")]"),
                1 => out.push_str(") => "),
                _ => out.push_str("),"),
            }
        }
        out
    }

    pub fn display6(&self, s: &Sort) -> String {
        match s {
            Sort::Ent(x) => self.display1(x),
            Sort::Abst(f) => format!("[{}", self.display5(f)),
        }
    }

    pub(crate) fn displayworld(&self, f: &[Entry]) -> String {
        let i = self.indents();
        f.iter()
            .map(|e| format!("{i}{}:{}\n\n", self.display4(&e.arg), self.display6(&e.sort)))
            .collect()
    }

    fn displayworlds(&self, displacement: usize, l: &[Vec<Entry>]) -> String {
        let mut out = String::new();
        for k in 0..l.len() {
            let len = l.len() - k;
            out.push_str(&format!(
                "\n\nMove {}{}:\n\n",
                displacement + len - 1,
                self.worldname(self.names.len().saturating_sub(displacement + len))
            ));
            out.push_str(&self.displayworld(&l[k]));
        }
        out.push_str("\n\n");
        out
    }

    pub fn showall(&mut self) {
        let text = self.displayworlds(0, &self.moves.clone());
        self.say0(&text);
    }

    pub fn showrecent(&mut self) {
        let top = self.moves[..2].to_vec();
        let text = self.displayworlds(self.moves.len() - 2, &top);
        self.say0(&text);
    }

    fn displayarewritelist(&self, l: &[Rule]) -> String {
        let mut out = String::new();
        for r in l {
            out.push_str(&format!(
                "{}:  {} := {}\n",
                r.witness,
                self.display2(&r.pattern),
                self.display2(&r.target)
            ));
        }
        out.push_str("\n\n");
        out
    }

    pub fn displayrewrites(&mut self) {
        let mut text = String::new();
        for l in &self.rewrites[1..] {
            text.push_str(&self.displayarewritelist(l));
        }
        text.push_str("\n\n");
        self.say(&text);
    }

    /// Declarations of the next move, newest first, then of the last move.
    pub fn showdecs(&mut self) {
        fn names<'a>(l: impl Iterator<Item = &'a Entry>) -> Vec<String> {
            l.filter_map(|e| match &e.arg {
                Argument::Ent(Entity::Atom(id)) | Argument::Abst(id) if id.ns == 0 => {
                    Some(id.name.clone())
                }
                _ => None,
            })
            .collect()
        }
        let next = names(self.moves[0].iter().rev());
        let last = names(self.moves[1].iter());
        self.say("Next move declarations");
        for n in next {
            self.showdec(&n);
        }
        self.say("Present move declarations:");
        for n in last {
            self.showdec(&n);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_text_is_one_line() {
        assert_eq!(tolinebreak(40, "x:obj"), ("x:obj".into(), 0));
        assert_eq!(restlinebreak(40, "x:obj"), "");
        assert_eq!(tolinebreak(1, "x:obj"), ("x:".into(), 0));
        assert_eq!(restlinebreak(1, "x:obj"), "obj");
    }

    #[test]
    fn bracket_close_always_breaks() {
        let (h, d) = tolinebreak(40, "[(x:obj)] => (y:obj)])");
        assert_eq!(h, "[(x:obj)]");
        assert_eq!(d, 0);
        assert_eq!(restlinebreak(40, "ab])rest"), "rest");
        assert_eq!(tolinebreak(40, "ab])rest"), ("ab])".into(), -1));
    }

    #[test]
    fn negative_tags_use_tilde() {
        assert_eq!(makestring(-3), "~3");
        assert_eq!(makestring(12), "12");
    }

    #[test]
    fn prettyprint_reassembles_text() {
        let mut s = Session::new();
        let text = "Ax:  [(.P_1:prop),(Q_1:that .P_1) => (---:that Q_1)]";
        let out = s.prettyprint(text);
        let joined: String = out.split_whitespace().collect();
        let orig: String = text.split_whitespace().collect();
        assert_eq!(joined, orig);
    }
}
