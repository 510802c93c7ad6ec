//! Tokenizer and the context-sensitive term parser.
//!
//! Parsing consults the session: the arity of a declared abstraction decides
//! how many arguments it takes. Every "rest" function returns a suffix of
//! its input.

use crate::session::Session;
use crate::term::{
    deent, reserved, Argument, Entity, EntitySort, Entry, Frame, Ident, Sort, UNKNOWN_ARG,
};

pub fn islower(c: char) -> bool {
    c.is_ascii_lowercase()
}

pub fn isupper(c: char) -> bool {
    c.is_ascii_uppercase()
}

pub fn isnumeral(c: char) -> bool {
    c.is_ascii_digit()
}

pub fn isspecial(c: char) -> bool {
    matches!(
        c,
        '~' | '@' | '#' | '$' | '%' | '^' | '&' | '*' | '-' | '+' | '=' | '|' | ';' | '.' | '<'
            | '>' | '?' | '/' | '!'
    )
}

fn punct(c: char) -> bool {
    matches!(c, ',' | ':' | '(' | ')')
}

fn continues(a: char, b: char) -> bool {
    if isupper(a) || islower(a) {
        islower(b) || isnumeral(b)
    } else if isnumeral(a) {
        isnumeral(b)
    } else if isspecial(a) {
        isspecial(b)
    } else {
        false
    }
}

/// Reads one token; returns it with the remaining characters, or `None`
/// when the stream ends after it.
fn next_token(s: &[char]) -> (String, Option<&[char]>) {
    let mut i = 0;
    let mut tok = String::new();
    loop {
        match &s[i..] {
            [] => return (tok, None),
            ['"', rest @ ..] => return (rest.iter().collect(), None),
            [c] => {
                if islower(*c) || isupper(*c) || isnumeral(*c) || isspecial(*c) || punct(*c) {
                    tok.push(*c);
                }
                return (tok, None);
            }
            [a, b, ..] => {
                let (a, b) = (*a, *b);
                if punct(a) {
                    tok.push(a);
                    return (tok, Some(&s[i + 1..]));
                }
                if a == ' ' {
                    i += 1;
                    continue;
                }
                if isupper(a) || islower(a) || isnumeral(a) || isspecial(a) {
                    tok.push(a);
                    if continues(a, b) {
                        i += 1;
                        continue;
                    }
                    return (tok, Some(&s[i + 1..]));
                }
                return (tok, None);
            }
        }
    }
}

pub fn tokenize(s: &str) -> Vec<String> {
    let chars: Vec<char> = s.chars().collect();
    let mut rest: &[char] = &chars;
    let mut out = Vec::new();
    while !rest.is_empty() {
        if let ['>', '>', tail @ ..] = rest {
            out.push(">> ".to_string());
            out.push(tail.iter().collect());
            break;
        }
        let (tok, next) = next_token(rest);
        out.push(tok);
        match next {
            Some(n) => rest = n,
            None => break,
        }
    }
    out
}

type Toks<'a> = &'a [String];

fn hd(l: Toks<'_>) -> &str {
    l.first().map(String::as_str).unwrap_or("")
}

fn terminator(l: Toks) -> bool {
    l.is_empty() || matches!(hd(l), "," | ")" | "(" | ":") || reserved(hd(l))
}

fn error_arg() -> Argument {
    Argument::Ent(Entity::Error)
}

/// Turns the frame of a primitive abstraction into a lambda body.
fn lambdaform(s: &str, l: &[Entry]) -> Frame {
    match l.split_last() {
        Some((last, init)) if last.arg == UNKNOWN_ARG => {
            let args = init.iter().map(|e| e.arg.clone()).collect();
            let mut out = init.to_vec();
            out.push(Entry::new(
                last.age,
                Argument::Ent(Entity::App(Ident::user(s), args)),
                last.sort.clone(),
            ));
            out
        }
        _ => l.to_vec(),
    }
}

impl Session {
    /// Frame of a declared abstraction, if `a` names one.
    fn abst_frame(&mut self, a: &str) -> Option<Frame> {
        let (sort, _) = self.lookup(a)?;
        Some(self.getabstype(&sort))
    }

    fn arity(&self, f: &[Entry]) -> usize {
        self.dotpurge(f).len()
    }

    /// A non-infix term.
    pub fn getterm(&mut self, l: Toks) -> Argument {
        let Some((a, rest)) = l.split_first() else {
            return error_arg();
        };
        if reserved(a) {
            return error_arg();
        }
        if a == "(" {
            let term = self.getterms(rest);
            let r = self.restterms(rest);
            return if hd(r) == ")" && !r.is_empty() { term } else { error_arg() };
        }
        if a == "," {
            return self.getterm(rest);
        }
        let Some((sort, _)) = self.lookup(a) else {
            return error_arg();
        };
        if let Sort::Ent(_) = sort {
            return Argument::Ent(Entity::Atom(Ident::user(a)));
        }
        let frame = self.getabstype(&sort);
        let k = self.arity(&frame);
        let head = Ident::user(a);
        if k == 1 {
            return Argument::Ent(Entity::App(head, Vec::new()));
        }
        if rest.is_empty() || matches!(hd(rest), "," | ":" | ")") || reserved(hd(rest)) {
            return Argument::Abst(head);
        }
        if k == 2 {
            let x = self.getterm(rest);
            let args = self.guardedfixarglist(&frame, &[x]);
            return Argument::Ent(Entity::App(head, args));
        }
        if hd(rest) == "(" {
            let inner = &rest[1..];
            let open = self.getopenarglist(inner);
            let term = self.guardedfixarglist(&frame, &open);
            let r = self.restopenarglist(inner);
            return if hd(r) == ")" && !r.is_empty() {
                self.fixapp(Argument::Ent(Entity::App(head, term)))
            } else {
                error_arg()
            };
        }
        let given = self.getarglist(k - 1, rest);
        let args = self.guardedfixarglist(&frame, &given);
        Argument::Ent(Entity::App(head, args))
    }

    pub fn restterm<'a>(&mut self, l: Toks<'a>) -> Toks<'a> {
        let Some((a, rest)) = l.split_first() else {
            return l;
        };
        if reserved(a) {
            return l;
        }
        if a == "(" {
            let r = self.restterms(rest);
            return if hd(r) == ")" && !r.is_empty() { &r[1..] } else { &[] };
        }
        if a == "," {
            return self.restterm(rest);
        }
        let Some((sort, _)) = self.lookup(a) else {
            return l;
        };
        if let Sort::Ent(_) = sort {
            return rest;
        }
        let frame = self.getabstype(&sort);
        let k = self.arity(&frame);
        if k == 1 {
            return rest;
        }
        if rest.is_empty() {
            return &[];
        }
        if hd(rest) == "," || reserved(hd(rest)) {
            return rest;
        }
        if k == 2 {
            return self.restterm(rest);
        }
        if hd(rest) == "(" {
            let r = self.restarglist(k - 1, &rest[1..]);
            return if hd(r) == ")" && !r.is_empty() { &r[1..] } else { &[] };
        }
        self.restarglist(k - 1, rest)
    }

    /// Infix operator following the first term, with its arity.
    fn infix_op(&mut self, r: Toks) -> Option<(Frame, usize)> {
        if terminator(r) {
            return None;
        }
        let frame = self.abst_frame_quiet(hd(r))?;
        let k = self.arity(&frame);
        if k <= 2 {
            return None;
        }
        let after = &r[1..];
        if after.is_empty() || matches!(hd(after), "," | ":" | ")") || reserved(hd(after)) {
            return None;
        }
        Some((frame, k))
    }

    fn abst_frame_quiet(&mut self, a: &str) -> Option<Frame> {
        match self.lookup(a) {
            Some((Sort::Abst(f), _)) => Some(f),
            _ => None,
        }
    }

    /// A term with at most one infix operator at the top.
    pub fn getterms(&mut self, l: Toks) -> Argument {
        if l.is_empty() || reserved(hd(l)) {
            return error_arg();
        }
        let term = self.getterm(l);
        let r = self.restterm(l);
        match self.infix_op(r) {
            None => term,
            Some((frame, k)) => {
                let mut given = vec![term];
                given.extend(self.getarglist(k - 2, &r[1..]));
                let args = self.guardedfixarglist(&frame, &given);
                Argument::Ent(Entity::App(Ident::user(hd(r)), args))
            }
        }
    }

    pub fn restterms<'a>(&mut self, l: Toks<'a>) -> Toks<'a> {
        if l.is_empty() || reserved(hd(l)) {
            return l;
        }
        let r = self.restterm(l);
        match self.infix_op(r) {
            None => r,
            Some((_, k)) => self.restarglist(k - 2, &r[1..]),
        }
    }

    pub fn getarglist(&mut self, n: usize, l: Toks) -> Vec<Argument> {
        let mut out = Vec::new();
        let mut l = l;
        for _ in 0..n {
            if l.is_empty() {
                out.push(error_arg());
                break;
            }
            out.push(self.getterms(l));
            l = self.restterms(l);
        }
        out
    }

    pub fn restarglist<'a>(&mut self, n: usize, l: Toks<'a>) -> Toks<'a> {
        let mut l = l;
        for _ in 0..n {
            if l.is_empty() {
                return l;
            }
            l = self.restterms(l);
        }
        l
    }

    /// Arguments up to a colon or closing parenthesis.
    pub fn getopenarglist(&mut self, l: Toks) -> Vec<Argument> {
        let mut out = Vec::new();
        let mut l = l;
        loop {
            if l.is_empty() || matches!(hd(l), ":" | ")") {
                return out;
            }
            let r = self.restterms(l);
            if r.len() == l.len() {
                return out;
            }
            out.push(self.getterms(l));
            l = self.restterms(l);
        }
    }

    pub fn restopenarglist<'a>(&mut self, l: Toks<'a>) -> Toks<'a> {
        let mut l = l;
        loop {
            match hd(l) {
                _ if l.is_empty() => return l,
                ":" => return &l[1..],
                ")" => return l,
                _ => {
                    if self.restterm(l).len() == l.len() {
                        return l;
                    }
                    l = self.restterms(l);
                }
            }
        }
    }

    pub fn readenttype(&mut self, l: Toks) -> EntitySort {
        match hd(l) {
            _ if l.is_empty() => EntitySort::Error,
            "obj" => EntitySort::Obj,
            "prop" => EntitySort::Prop,
            "type" => EntitySort::Type,
            "that" | "in" => {
                let p = deent(&self.getterms(&l[1..]));
                if p == Entity::Unknown {
                    EntitySort::Error
                } else if hd(l) == "that" {
                    EntitySort::That(p)
                } else {
                    EntitySort::In(p)
                }
            }
            _ => EntitySort::Error,
        }
    }

    pub fn restenttype<'a>(&mut self, l: Toks<'a>) -> Toks<'a> {
        match hd(l) {
            _ if l.is_empty() => l,
            "obj" | "prop" | "type" => &l[1..],
            "that" | "in" => {
                let p = deent(&self.getterms(&l[1..]));
                if p == Entity::Unknown {
                    l
                } else {
                    self.restterms(&l[1..])
                }
            }
            _ => l,
        }
    }

    /// Curries an application given fewer arguments than its arity.
    fn fixapp(&mut self, t: Argument) -> Argument {
        let Argument::Ent(Entity::App(a, l)) = &t else {
            return t;
        };
        if a.ns != 0 {
            return t;
        }
        let Some(frame) = self.abst_frame(&a.name) else {
            return t;
        };
        if l.len() + 1 == frame.len() {
            return t;
        }
        let given = self.typed_args(l);
        let lf = lambdaform(&a.name, &frame);
        let fixed = self.fixlisttype(true, &given, &lf);
        Argument::Lambda(self.renamespace(&fixed))
    }

    fn fixlisttype(&mut self, last: bool, l: &[Entry], t1: &[Entry]) -> Frame {
        if t1.len() <= l.len() {
            return Vec::new();
        }
        if t1.len() == l.len() + 1 {
            let end = &t1[t1.len() - 1];
            let arg = if last {
                Argument::Ent(self.defmatchcomp0(true, t1.to_vec(), l))
            } else {
                end.arg.clone()
            };
            let sort = self.typematchcomp1(t1.to_vec(), l);
            return vec![Entry::new(end.age, arg, sort)];
        }
        let ll = self.fixlisttype(false, l, &t1[..t1.len() - 1]);
        let mut l2 = l.to_vec();
        l2.extend(ll.iter().cloned());
        let mut out = ll;
        out.extend(self.fixlisttype(last, &l2, t1));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        tokenize(s)
    }

    #[test]
    fn token_classes() {
        assert_eq!(toks("declare x obj"), vec!["declare", "x", "obj"]);
        assert_eq!(toks("Forall(x:obj)"), vec!["Forall", "(", "x", ":", "obj", ")"]);
        assert_eq!(toks("AB"), vec!["A", "B"]);
        assert_eq!(toks("x1 23 ==>"), vec!["x1", "23", "==>"]);
        assert_eq!(toks("P1a"), vec!["P1", "a"]);
        assert_eq!(toks("p -> q"), vec!["p", "->", "q"]);
    }

    #[test]
    fn quotes_and_comments() {
        assert_eq!(toks("parsetest \"a & b"), vec!["parsetest", "a & b"]);
        assert_eq!(toks(">> hello there"), vec![">> ", " hello there"]);
    }

    #[test]
    fn odd_characters() {
        assert_eq!(toks("x "), vec!["x", ""]);
        assert_eq!(toks("x {y}"), vec!["x", ""]);
        assert_eq!(toks(""), Vec::<String>::new());
    }
}
