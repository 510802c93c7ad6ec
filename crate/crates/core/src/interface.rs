//! Command lines, file execution and the interactive loop.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use crate::render::despace;
use crate::session::Session;
use crate::syntax::tokenize;
use crate::term::{deent, Argument};

const BANNER: &str = "\n>>   Welcome to the Lestrade Type Inspector\n>>   (Rust edition)\n";

fn hd(l: &[String]) -> &str {
    l.first().map(String::as_str).unwrap_or("")
}

fn unfinished(r: &[String]) -> bool {
    !r.is_empty() && !(r.len() == 1 && r[0].is_empty())
}

/// Appends the `.lti` extension used for source and log files.
pub fn lti_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.lti"))
}

/// A session together with the files and streams it talks to.
pub struct Runner {
    pub session: Session,
    /// Directory against which file names are resolved.
    pub dir: PathBuf,
    log_name: String,
    log_name2: String,
    depth: usize,
    console_out: Option<Box<dyn Write>>,
    input: Option<Box<dyn BufRead>>,
    theline: String,
    theline2: String,
}

impl Default for Runner {
    fn default() -> Self {
        Self::new(".")
    }
}

impl Runner {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Runner {
            session: Session::new(),
            dir: dir.into(),
            log_name: String::new(),
            log_name2: String::new(),
            depth: 0,
            console_out: None,
            input: None,
            theline: String::new(),
            theline2: String::new(),
        }
    }

    /// Stream console output here instead of buffering it.
    pub fn with_console(mut self, w: Box<dyn Write>) -> Self {
        self.console_out = Some(w);
        self
    }

    /// Input used by `pause` for nested interaction.
    pub fn with_input(mut self, r: Box<dyn BufRead>) -> Self {
        self.input = Some(r);
        self
    }

    fn flush_console(&mut self) {
        if let Some(w) = self.console_out.as_mut() {
            let text = self.session.take_console();
            let _ = w.write_all(text.as_bytes());
            let _ = w.flush();
        }
    }

    fn greet(&mut self) {
        if !self.session.greeted {
            self.session.say(BANNER);
            self.session.greeted = true;
        }
    }

    /// Executes one command line.
    pub fn readline(&mut self, s: &str) {
        let d = despace(s);
        self.theline2 = format!("{d}\n");
        self.theline = format!("{}{d}\n", self.session.indents());
        let toks = tokenize(s);
        self.dispatch(&toks);
        self.flush_console();
    }

    fn echo(&mut self, newline: bool, spaced: bool, line2: bool) {
        let line = if line2 { self.theline2.clone() } else { self.theline.clone() };
        let logged = self.theline.clone();
        let nl = if newline { "\n" } else { "" };
        self.session.write_log(&format!("{logged}{nl}"));
        let sep = if spaced { "  " } else { " " };
        self.session.say0(&format!("Your command:{sep}{line}{nl}"));
    }

    fn dispatch(&mut self, toks: &[String]) {
        let Some((a, l)) = toks.split_first() else {
            return;
        };
        let s = &mut self.session;
        match a.as_str() {
            "readfile" if l.len() >= 2 => {
                let (src, log) = (l[0].clone(), l[1].clone());
                self.depth += 1;
                self.nested_readfile(&src, &log);
            }
            "parsetest" if !l.is_empty() => {
                let t = tokenize(&l[0]);
                let e = deent(&s.getterms(&t));
                let shown = s.display2(&e);
                s.say(&shown);
                let e = deent(&s.getterms(&t));
                let ty = s.entitytype(&e);
                let shown = s.display1(&ty);
                s.say(&shown);
            }
            "parsetest2" if !l.is_empty() => {
                let t = tokenize(&l[0]);
                let ty = s.readenttype(&t);
                let shown = s.display1(&ty);
                s.say(&shown);
            }
            "declare" if l.len() >= 2 => {
                let name = l[0].clone();
                let t = s.readenttype(&l[1..]);
                if unfinished(s.restenttype(&l[1..])) {
                    s.saypause(&format!("Declaration line not completely read:  {name}"));
                }
                self.echo(false, false, true);
                self.session.declare(&name, &t);
            }
            "construct" if l.len() >= 2 => {
                let name = l[0].clone();
                let args = s.getopenarglist(&l[1..]);
                let r = s.restopenarglist(&l[1..]);
                let t = s.readenttype(r);
                let rest = s.restenttype(r);
                if unfinished(rest) {
                    let msg = format!("Construction line not completely read:  {}", hd(rest));
                    s.saypause(&msg);
                }
                self.echo(false, false, true);
                self.session.construct(&name, &args, &t);
            }
            "define" if l.len() >= 2 => {
                let name = l[0].clone();
                let args = s.getopenarglist(&l[1..]);
                let r = s.restopenarglist(&l[1..]);
                let body = s.getterms(r);
                let Argument::Ent(t) = body else {
                    s.saypause("Sorry, cannot define something as an abstraction");
                    return;
                };
                if unfinished(s.restterms(r)) {
                    let msg = format!("Definition line not completely read:  {}", hd(r));
                    s.saypause(&msg);
                }
                self.echo(false, false, false);
                self.session.define(&name, &args, &t);
            }
            "rewritec" | "rewrited" if l.len() >= 2 => {
                let name = l[0].clone();
                let args = s.getopenarglist(&l[1..]);
                let r = s.restopenarglist(&l[1..]);
                let v = hd(r).to_string();
                if r.len() > 1 && unfinished(r) {
                    let msg = if a == "rewritec" {
                        let rr = s.restterms(r);
                        format!("Rewrite construction line not completely read:  {}", hd(rr))
                    } else {
                        format!("Rewrite demonstration line not completely read:  {}", hd(r))
                    };
                    s.saypause(&msg);
                }
                self.echo(false, false, false);
                if a == "rewritec" {
                    self.session.rewritec(&name, &args, &v);
                } else {
                    self.session.rewrited(&name, &args, &v);
                }
            }
            "open" => {
                self.echo(true, true, false);
                let s = &mut self.session;
                let n = if hd(l).is_empty() { s.depth().to_string() } else { l[0].clone() };
                s.open_move(&n);
            }
            "close" => {
                self.echo(true, false, false);
                self.session.close_move();
            }
            "save" => {
                self.echo(true, true, false);
                let s = &mut self.session;
                let n = if hd(l).is_empty() { s.names[0].clone() } else { l[0].clone() };
                s.save_moves(&n);
            }
            "load" => {
                self.echo(true, true, false);
                self.session.load_theory(hd(l));
            }
            "showall" => s.showall(),
            "showimplicit" => s.show_implicit = true,
            "hideimplicit" => s.show_implicit = false,
            "displayrewrites" => s.displayrewrites(),
            "showrecent" => s.showrecent(),
            "showdec" if !l.is_empty() => s.showdec(&l[0]),
            "showdecs" => s.showdecs(),
            "foropen" => {
                let t = s.list_openable();
                s.say(&format!("\n\n{t}"));
            }
            "forclearcurrent" => {
                let t = s.list_clearable();
                s.say(&format!("\n\n{t}"));
            }
            "comment" | "%" => {
                let line = self.theline.clone();
                self.session.write_log(&format!("{line}\n"));
                self.session.say0(&format!("{line}\n"));
            }
            "comment1" | "%%" => {
                let line = self.theline.clone();
                self.session.write_log(&line);
                self.session.say0(&line);
            }
            ">> " => {}
            "clearcurrent" => {
                let n = if hd(l).is_empty() { (s.depth() - 1).to_string() } else { l[0].clone() };
                s.clear_current(&n);
                let line = self.theline.clone();
                self.session.write_log(&format!("{line}\n"));
            }
            "clearall" => {
                s.clear_all();
                let line = self.theline.clone();
                self.session.write_log(&line);
                self.session.showall();
            }
            "basic" | "explicit" | "fullversion" => {
                match a.as_str() {
                    "basic" => s.set_features(false, false),
                    "explicit" => s.set_features(true, false),
                    _ => s.set_features(true, true),
                }
                let line = self.theline.clone();
                self.session.write_log(&line);
            }
            "pause" => {
                let msg = format!(
                    "Pausing in {}:\n>>  type lines or type quit to resume",
                    self.log_name
                );
                s.say(&msg);
                let line = self.theline.clone();
                self.session.write_log(&line);
                if let Some(mut input) = self.input.take() {
                    self.interact(&mut input, None);
                    self.input = Some(input);
                }
            }
            "" => {}
            _ => s.saypause("Line is not a Lestrade command"),
        }
    }

    /// Runs the lines of a source text as a file named `src`, logging under
    /// `log`. Returns the log text.
    pub fn run_source(&mut self, src: &str, log: &str, text: &str) -> String {
        let s = &mut self.session;
        s.breakout = false;
        s.clear_all();
        self.log_name = src.to_string();
        self.log_name2 = log.to_string();
        self.greet();
        self.flush_console();
        for line in text.lines() {
            if line == "quit" || self.session.breakout {
                break;
            }
            self.readline(line);
        }
        self.finish_file(src);
        self.session.take_log()
    }

    fn finish_file(&mut self, src: &str) {
        let s = &mut self.session;
        s.breakout = false;
        let msg = format!(
            "Done reading {} to {}:\n>>  type lines or type quit to exit interface\n\nquit\n",
            self.log_name, self.log_name2
        );
        s.say(&msg);
        s.save_theory(src);
        self.flush_console();
    }

    /// Reads `<src>.lti` and writes the log to `<log>.lti`.
    pub fn readfile(&mut self, src: &str, log: &str) -> io::Result<()> {
        let text = fs::read_to_string(lti_path(&self.dir, src))?;
        let out = self.run_source(src, log, &text);
        fs::write(lti_path(&self.dir, log), out)
    }

    fn nested_readfile(&mut self, src: &str, log: &str) {
        let outer = self.session.take_log();
        let (n1, n2) = (self.log_name.clone(), self.log_name2.clone());
        if let Err(e) = self.readfile(src, log) {
            self.session.take_log();
            self.session.write_log(&outer);
            self.session.saypause(&format!("Cannot read {src}.lti: {e}"));
        } else {
            self.session.write_log(&outer);
        }
        self.log_name = n1;
        self.log_name2 = n2;
        self.depth = self.depth.saturating_sub(1);
        self.flush_console();
    }

    /// Interactive loop on the input given to [`Runner::with_input`].
    pub fn run_interactive(&mut self, log: Option<&str>) {
        if let Some(mut input) = self.input.take() {
            self.interact(&mut input, log);
            self.input = Some(input);
        }
    }

    /// Interactive loop; lines come from `input` until `quit` or end of input.
    /// With a log name, the log is appended to `<log>.lti` as it grows.
    pub fn interact(&mut self, input: &mut dyn BufRead, log: Option<&str>) {
        let path = log.filter(|n| !n.trim().is_empty()).map(|n| lti_path(&self.dir, n));
        let mut file = path.and_then(|p| fs::File::create(p).ok());
        self.greet();
        self.flush_console();
        let mut line = String::new();
        loop {
            line.clear();
            let n = input.read_line(&mut line).unwrap_or(0);
            let text = line.trim_end_matches(['\n', '\r']);
            if n == 0 || text == "quit" {
                if file.is_some() {
                    self.session.write_log("quit");
                }
                self.session.say("Bye!");
                break;
            }
            self.readline(text);
            if let Some(f) = file.as_mut() {
                let t = self.session.take_log();
                let _ = f.write_all(t.as_bytes());
            }
        }
        if let Some(f) = file.as_mut() {
            let t = self.session.take_log();
            let _ = f.write_all(t.as_bytes());
            let _ = f.flush();
        }
        self.flush_console();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_command_breaks_out() {
        let mut r = Runner::new(".");
        let log = r.run_source("t", "tlog", "frobnicate\ndeclare x obj\n");
        assert!(log.contains("Line is not a Lestrade command"));
        assert!(!log.contains("x:  obj"));
        assert_eq!(r.session.errors, 1);
    }

    #[test]
    fn declare_is_echoed_and_shown() {
        let mut r = Runner::new(".");
        let log = r.run_source("t", "tlog", "declare x obj\n");
        assert!(log.contains("declare x obj\n"));
        assert!(log.contains("\n>> x: obj {move 1}\n"));
        assert!(log.contains("Done reading t to tlog"));
    }

    #[test]
    fn define_rejects_abstraction_body() {
        let mut r = Runner::new(".");
        let src = "declare x obj\nconstruct f x obj\nopen\ndeclare y obj\ndefine g y : f\nclose\n";
        let log = r.run_source("t", "tlog", src);
        assert!(log.contains("Sorry, cannot define something as an abstraction"));
    }

    #[test]
    fn theory_is_saved_under_source_name() {
        let mut r = Runner::new(".");
        r.run_source("base", "baselog", "declare x obj\nconstruct c obj\n");
        assert!(r.session.has_theory("base"));
        r.run_source("next", "nextlog", "load base\nshowdec c\n");
        assert_eq!(r.session.errors, 0);
    }
}
