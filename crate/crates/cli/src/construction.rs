//! The small grammar accepted by `decompose`:
//!
//! ```text
//! construction := sym D module group | ext D module group
//!               | tensor module module group | irrep module group
//! module       := std | spinor | spinor- | wedge K | sym K | omega I | weight W
//! group        := gl N | <letter><rank>      (a4, d6, e6, ...)
//! ```
//!
//! `wedge K` and `sym K` are the powers of the standard module, so
//! `sym 3 wedge 3 gl 7` is `S³(Λ³K⁷)`. `weight` takes comma-separated
//! coordinates: a partition for `gl`, fundamental-weight coordinates otherwise.

use std::fmt;

use chss::decompose::{Character, Engine};
use chss::rootsys::{Family, RootDatum};
use chss::Exec;

/// A parse failure at a 1-based argument position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("argument {position} ({found}): expected {expected}")]
pub struct ParseError {
    pub position: usize,
    pub found: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Gl(usize),
    Simple(Family, usize),
}

impl GroupSpec {
    pub fn datum(&self) -> chss::Result<RootDatum> {
        match *self {
            GroupSpec::Gl(n) => RootDatum::gl(n),
            GroupSpec::Simple(f, r) => RootDatum::simple_group(f, r),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Gl(n) => write!(f, "GL{n}"),
            GroupSpec::Simple(fam, r) => write!(f, "{}{r}", fam.letter()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    Standard,
    /// Half-spin module `V_{ω_n}`; `minus` selects `V_{ω_{n-1}}` in type D.
    Spinor { minus: bool },
    Wedge(usize),
    Sym(usize),
    Omega(usize),
    Weight(Vec<i64>),
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Standard => write!(f, "V"),
            ModuleSpec::Spinor { minus: false } => write!(f, "Δ₊"),
            ModuleSpec::Spinor { minus: true } => write!(f, "Δ₋"),
            ModuleSpec::Wedge(k) => write!(f, "Λ^{k} V"),
            ModuleSpec::Sym(k) => write!(f, "S^{k} V"),
            ModuleSpec::Omega(i) => write!(f, "V(ω{i})"),
            ModuleSpec::Weight(w) => {
                write!(f, "V({})", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Sym(usize, ModuleSpec),
    Ext(usize, ModuleSpec),
    Tensor(ModuleSpec, ModuleSpec),
    Irrep(ModuleSpec),
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Sym(d, m) => write!(f, "S^{d}({m})"),
            Construction::Ext(d, m) => write!(f, "Λ^{d}({m})"),
            Construction::Tensor(a, b) => write!(f, "({a}) ⊗ ({b})"),
            Construction::Irrep(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub construction: Construction,
    pub group: GroupSpec,
}

struct Tokens<'a> {
    items: &'a [String],
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn err(&self, expected: &str) -> ParseError {
        ParseError {
            position: self.pos + 1,
            found: self.items.get(self.pos).map_or_else(|| "end of input".to_string(), |s| format!("'{s}'")),
            expected: expected.to_string(),
        }
    }

    fn next(&mut self, expected: &str) -> Result<&'a str, ParseError> {
        let t = self.items.get(self.pos).ok_or_else(|| self.err(expected))?;
        self.pos += 1;
        Ok(t)
    }

    fn number(&mut self, expected: &str) -> Result<usize, ParseError> {
        match self.items.get(self.pos).and_then(|s| s.parse::<usize>().ok()) {
            Some(n) => {
                self.pos += 1;
                Ok(n)
            }
            None => Err(self.err(expected)),
        }
    }

    fn module(&mut self) -> Result<ModuleSpec, ParseError> {
        const EXPECTED: &str = "a module (std, spinor, spinor-, wedge K, sym K, omega I, weight W)";
        let start = self.pos;
        let m = match self.next(EXPECTED)?.to_ascii_lowercase().as_str() {
            "std" => ModuleSpec::Standard,
            "spinor" | "spinor+" => ModuleSpec::Spinor { minus: false },
            "spinor-" => ModuleSpec::Spinor { minus: true },
            "wedge" => ModuleSpec::Wedge(self.number("an exterior degree")?),
            "sym" => ModuleSpec::Sym(self.number("a symmetric degree")?),
            "omega" => ModuleSpec::Omega(self.number("a node number")?),
            "weight" => {
                let raw = self.next("comma-separated weight coordinates")?;
                let w: Result<Vec<i64>, _> = raw.split(',').map(|x| x.trim().parse::<i64>()).collect();
                ModuleSpec::Weight(w.map_err(|_| {
                    self.pos -= 1;
                    self.err("comma-separated integers")
                })?)
            }
            _ => {
                self.pos = start;
                return Err(self.err(EXPECTED));
            }
        };
        Ok(m)
    }

    fn group(&mut self) -> Result<GroupSpec, ParseError> {
        const EXPECTED: &str = "a group (gl N, or a type and rank such as d6)";
        let start = self.pos;
        let t = self.next(EXPECTED)?.to_ascii_lowercase();
        if t == "gl" {
            let n = self.number("the size N of GL(N)")?;
            if n == 0 {
                self.pos -= 1;
                return Err(self.err("N >= 1"));
            }
            return Ok(GroupSpec::Gl(n));
        }
        let mut chars = t.chars();
        let family = chars.next().and_then(|c| Family::from_letter(c.to_ascii_uppercase()));
        match (family, chars.as_str().parse::<usize>()) {
            (Some(f), Ok(r)) if r >= 1 => Ok(GroupSpec::Simple(f, r)),
            _ => {
                self.pos = start;
                Err(self.err(EXPECTED))
            }
        }
    }
}

/// Parse the positional arguments of `decompose`.
pub fn parse(args: &[String]) -> Result<Request, ParseError> {
    let mut t = Tokens { items: args, pos: 0 };
    let construction = match t.next("sym, ext, tensor or irrep")?.to_ascii_lowercase().as_str() {
        "sym" => {
            let d = t.number("a symmetric degree")?;
            Construction::Sym(d, t.module()?)
        }
        "ext" | "wedge" => {
            let d = t.number("an exterior degree")?;
            Construction::Ext(d, t.module()?)
        }
        "tensor" => {
            let a = t.module()?;
            Construction::Tensor(a, t.module()?)
        }
        "irrep" => Construction::Irrep(t.module()?),
        _ => {
            t.pos = 0;
            return Err(t.err("sym, ext, tensor or irrep"));
        }
    };
    let group = t.group()?;
    if t.pos < args.len() {
        return Err(t.err("end of input"));
    }
    Ok(Request { construction, group })
}

fn irrep_weight(g: &RootDatum, group: &GroupSpec, m: &ModuleSpec) -> chss::Result<Option<Vec<i64>>> {
    let bad = |what: &str| chss::Error::usage(format!("{what} is not defined for {group}"));
    let w = match (group, m) {
        (GroupSpec::Gl(n), ModuleSpec::Standard) => unit(*n, 1),
        (GroupSpec::Gl(n), ModuleSpec::Omega(i)) if (1..=*n).contains(i) => unit(*n, *i),
        (GroupSpec::Gl(n), ModuleSpec::Weight(w)) if w.len() <= *n => {
            let mut w = w.clone();
            w.resize(*n, 0);
            w
        }
        (GroupSpec::Gl(_), ModuleSpec::Spinor { .. }) => return Err(bad("a spin module")),
        (GroupSpec::Simple(f, r), ModuleSpec::Standard) => {
            let node = if *f == Family::E && *r == 7 { 7 } else { 1 };
            omega(*r, node)
        }
        (GroupSpec::Simple(Family::B, r), ModuleSpec::Spinor { minus: false }) => omega(*r, *r),
        (GroupSpec::Simple(Family::D, r), ModuleSpec::Spinor { minus }) if *r >= 3 => {
            omega(*r, if *minus { r - 1 } else { *r })
        }
        (GroupSpec::Simple(_, _), ModuleSpec::Spinor { .. }) => return Err(bad("this spin module")),
        (GroupSpec::Simple(_, r), ModuleSpec::Omega(i)) if (1..=*r).contains(i) => omega(*r, *i),
        (GroupSpec::Simple(_, r), ModuleSpec::Weight(w)) if w.len() == *r => w.clone(),
        (_, ModuleSpec::Wedge(_) | ModuleSpec::Sym(_)) => return Ok(None),
        _ => return Err(chss::Error::usage(format!("{m} does not match {group}"))),
    };
    if !g.is_dominant(&w) {
        return Err(chss::Error::usage(format!("{} is not dominant for {group}", g.format_weight(&w))));
    }
    Ok(Some(w))
}

fn unit(n: usize, k: usize) -> Vec<i64> {
    (0..n).map(|i| i64::from(i < k)).collect()
}

fn omega(r: usize, i: usize) -> Vec<i64> {
    (1..=r).map(|j| i64::from(j == i)).collect()
}

/// The character of a module.
pub fn module_character(engine: &Engine, group: &GroupSpec, m: &ModuleSpec, exec: Exec) -> chss::Result<Character> {
    let g = engine.datum();
    if let Some(w) = irrep_weight(g, group, m)? {
        return engine.irrep_character(&w);
    }
    let std = module_character(engine, group, &ModuleSpec::Standard, exec)?;
    Ok(match m {
        ModuleSpec::Wedge(k) => std.ext_power(*k, exec),
        ModuleSpec::Sym(k) => std.sym_power(*k, exec),
        _ => unreachable!("irreducible modules are handled above"),
    })
}

/// The character of the whole construction.
pub fn construction_character(engine: &Engine, req: &Request, exec: Exec) -> chss::Result<Character> {
    let ch = |m: &ModuleSpec| module_character(engine, &req.group, m, exec);
    Ok(match &req.construction {
        Construction::Sym(d, m) => ch(m)?.sym_power(*d, exec),
        Construction::Ext(d, m) => ch(m)?.ext_power(*d, exec),
        Construction::Tensor(a, b) => ch(a)?.mul(&ch(b)?, exec),
        Construction::Irrep(m) => ch(m)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn parses_plethysm() {
        let r = parse(&args("sym 3 wedge 3 gl 7")).unwrap();
        assert_eq!(r.construction, Construction::Sym(3, ModuleSpec::Wedge(3)));
        assert_eq!(r.group, GroupSpec::Gl(7));
        let r = parse(&args("ext 2 spinor d6")).unwrap();
        assert_eq!(r.group, GroupSpec::Simple(Family::D, 6));
    }

    #[test]
    fn reports_position() {
        let e = parse(&args("sym 3 wedgie 3 gl 7")).unwrap_err();
        assert_eq!(e.position, 3);
        let e = parse(&args("sym x")).unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse(&args("sym 2 std gl 3 extra")).unwrap_err();
        assert_eq!(e.position, 6);
        let e = parse(&args("sym 2 std")).unwrap_err();
        assert_eq!(e.found, "end of input");
        assert_eq!(parse(&args("irrep weight 1,x gl 3")).unwrap_err().position, 3);
    }
}
