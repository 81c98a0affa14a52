//! Terms over a signature and a variable set, with parsing, printing, and
//! evaluation in any finite carrier.
//!
//! Terms produced by the cover-synthesis pipeline (the folded equation pair
//! delta/epsilon) can be large and deep, so every traversal here — parsing,
//! printing, evaluation, substitution, equality, drop — runs on an explicit
//! work stack instead of the call stack.

use crate::error::{Error, Result};
use crate::signature::{Signature, VariableSet};

/// A term: a variable leaf or an operation applied to subterms.
///
/// Variables and symbols are stored as indices into the ambient
/// `VariableSet` / `Signature`, which keeps comparison canonical.
#[derive(Debug, Clone)]
pub enum Term {
    Var(usize),
    App(usize, Vec<Term>),
}

impl Term {
    pub fn constant(sym: usize) -> Term {
        Term::App(sym, Vec::new())
    }

    /// Number of nodes (variables and applications both count 1).
    pub fn node_count(&self) -> usize {
        let mut n = 0;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            n += 1;
            if let Term::App(_, args) = t {
                stack.extend(args.iter());
            }
        }
        n
    }

    /// Largest variable index occurring in the term, if any.
    pub fn max_var(&self) -> Option<usize> {
        let mut max = None;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Term::Var(i) => max = Some(max.map_or(*i, |m: usize| m.max(*i))),
                Term::App(_, args) => stack.extend(args.iter()),
            }
        }
        max
    }

    /// Set of distinct variable indices occurring in the term, sorted.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                Term::Var(i) => {
                    if !seen.contains(i) {
                        seen.push(*i);
                    }
                }
                Term::App(_, args) => stack.extend(args.iter()),
            }
        }
        seen.sort_unstable();
        seen
    }
}

// Deep terms would overflow the stack under the derived recursive drop.
impl Drop for Term {
    fn drop(&mut self) {
        if let Term::App(_, children) = self {
            if children.is_empty() {
                return;
            }
            let mut stack = std::mem::take(children);
            while let Some(mut t) = stack.pop() {
                if let Term::App(_, cs) = &mut t {
                    stack.append(cs);
                }
            }
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        let mut stack = vec![(self, other)];
        while let Some((a, b)) = stack.pop() {
            match (a, b) {
                (Term::Var(i), Term::Var(j)) => {
                    if i != j {
                        return false;
                    }
                }
                (Term::App(f, xs), Term::App(g, ys)) => {
                    if f != g || xs.len() != ys.len() {
                        return false;
                    }
                    stack.extend(xs.iter().zip(ys.iter()));
                }
                _ => return false,
            }
        }
        true
    }
}

impl Eq for Term {}

/// Anything a term can be evaluated in: a finite carrier with one total
/// operation per signature symbol.
pub trait AlgebraOps {
    fn size(&self) -> usize;
    fn signature(&self) -> &Signature;
    /// Apply operation `sym` to elements; args length must equal the arity.
    fn apply(&self, sym: usize, args: &[usize]) -> usize;
}

/// Evaluate `t` under the assignment `asg` (variable index -> element).
///
/// Structural recursion over the operation tables, run iteratively; terms of
/// millions of nodes are fine.
pub fn evaluate<A: AlgebraOps + ?Sized>(t: &Term, alg: &A, asg: &[usize]) -> Result<usize> {
    enum Frame<'t> {
        Enter(&'t Term),
        Apply(usize, usize),
    }
    let mut work = vec![Frame::Enter(t)];
    let mut values: Vec<usize> = Vec::new();
    let mut args_buf: Vec<usize> = Vec::new();
    while let Some(frame) = work.pop() {
        match frame {
            Frame::Enter(Term::Var(i)) => match asg.get(*i) {
                Some(&v) => values.push(v),
                None => return Err(Error::UnassignedVariable { index: *i }),
            },
            Frame::Enter(Term::App(sym, args)) => {
                work.push(Frame::Apply(*sym, args.len()));
                for a in args.iter().rev() {
                    work.push(Frame::Enter(a));
                }
            }
            Frame::Apply(sym, argc) => {
                args_buf.clear();
                args_buf.extend(values.drain(values.len() - argc..));
                values.push(alg.apply(sym, &args_buf));
            }
        }
    }
    debug_assert_eq!(values.len(), 1);
    Ok(values.pop().unwrap())
}

/// Replace every `Var(i)` by `replacements[i]`.
pub fn substitute(t: &Term, replacements: &[Term]) -> Term {
    enum Frame<'t> {
        Enter(&'t Term),
        Build(usize, usize),
    }
    let mut work = vec![Frame::Enter(t)];
    let mut out: Vec<Term> = Vec::new();
    while let Some(frame) = work.pop() {
        match frame {
            Frame::Enter(Term::Var(i)) => out.push(replacements[*i].clone()),
            Frame::Enter(Term::App(sym, args)) => {
                work.push(Frame::Build(*sym, args.len()));
                for a in args.iter().rev() {
                    work.push(Frame::Enter(a));
                }
            }
            Frame::Build(sym, argc) => {
                let args = out.split_off(out.len() - argc);
                out.push(Term::App(sym, args));
            }
        }
    }
    out.pop().unwrap()
}

/// The ternary discriminator derived from a switching term:
/// `t(x,y,z) := switch(x,y,z,x)`.
///
/// On any algebra where `switch` is the switching operation, the result
/// satisfies t(x,y,z) = z when x = y and t(x,y,z) = x otherwise. The input
/// must be declared over exactly 4 variables.
pub fn derive_discriminator(switch: &Term, switch_vars: &VariableSet) -> Result<Term> {
    if switch_vars.len() != 4 {
        return Err(Error::BadSwitchTerm {
            got: switch_vars.len(),
        });
    }
    Ok(substitute(
        switch,
        &[Term::Var(0), Term::Var(1), Term::Var(2), Term::Var(0)],
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token<'a> {
    Open(usize),
    Close(usize),
    Ident(&'a str, usize),
}

fn tokenize(text: &str) -> Result<Vec<Token<'_>>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b'(' => {
                tokens.push(Token::Open(i));
                i += 1;
            }
            b')' => {
                tokens.push(Token::Close(i));
                i += 1;
            }
            _ if b.is_ascii_whitespace() => i += 1,
            _ if b.is_ascii_alphabetic() || b == b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push(Token::Ident(&text[start..i], start));
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{}`", bytes[i] as char),
                })
            }
        }
    }
    Ok(tokens)
}

/// Parse the prefix s-expression grammar
/// `TERM := IDENT | "(" IDENT TERM* ")"`.
///
/// A bare identifier is a variable or a constant; constants are accepted
/// both bare (`c`) and applied (`(c)`).
pub fn parse_term(text: &str, sig: &Signature, vars: &VariableSet) -> Result<Term> {
    let tokens = tokenize(text)?;
    // Open frames: (symbol, open position, children so far).
    let mut frames: Vec<(usize, usize, Vec<Term>)> = Vec::new();
    let mut result: Option<Term> = None;
    let mut pending_open: Option<usize> = None;

    let attach = |frames: &mut Vec<(usize, usize, Vec<Term>)>,
                      result: &mut Option<Term>,
                      t: Term,
                      pos: usize|
     -> Result<()> {
        if let Some(frame) = frames.last_mut() {
            frame.2.push(t);
            Ok(())
        } else if result.is_none() {
            *result = Some(t);
            Ok(())
        } else {
            Err(Error::Syntax {
                pos,
                msg: "trailing input after complete term".into(),
            })
        }
    };

    for tok in tokens {
        match tok {
            Token::Open(pos) => {
                if pending_open.is_some() {
                    return Err(Error::Syntax {
                        pos,
                        msg: "expected operation symbol after `(`".into(),
                    });
                }
                if result.is_some() && frames.is_empty() {
                    return Err(Error::Syntax {
                        pos,
                        msg: "trailing input after complete term".into(),
                    });
                }
                pending_open = Some(pos);
            }
            Token::Ident(name, pos) => {
                if pending_open.is_none() && result.is_some() && frames.is_empty() {
                    return Err(Error::Syntax {
                        pos,
                        msg: "trailing input after complete term".into(),
                    });
                }
                if pending_open.take().is_some() {
                    match sig.lookup(name) {
                        Some(sym) => frames.push((sym, pos, Vec::new())),
                        None => {
                            return Err(Error::UnknownSymbol {
                                pos,
                                name: name.into(),
                            })
                        }
                    }
                } else if let Some(v) = vars.lookup(name) {
                    attach(&mut frames, &mut result, Term::Var(v), pos)?;
                } else if let Some(sym) = sig.lookup(name) {
                    if sig.arity(sym) != 0 {
                        return Err(Error::ArityMismatch {
                            pos,
                            symbol: name.into(),
                            expected: sig.arity(sym),
                            got: 0,
                        });
                    }
                    attach(&mut frames, &mut result, Term::constant(sym), pos)?;
                } else {
                    return Err(Error::UnknownSymbol {
                        pos,
                        name: name.into(),
                    });
                }
            }
            Token::Close(pos) => {
                if let Some(open_pos) = pending_open {
                    return Err(Error::Syntax {
                        pos: open_pos,
                        msg: "expected operation symbol after `(`".into(),
                    });
                }
                match frames.pop() {
                    Some((sym, open_pos, children)) => {
                        if children.len() != sig.arity(sym) {
                            return Err(Error::ArityMismatch {
                                pos: open_pos,
                                symbol: sig.name(sym).into(),
                                expected: sig.arity(sym),
                                got: children.len(),
                            });
                        }
                        attach(&mut frames, &mut result, Term::App(sym, children), pos)?;
                    }
                    None => {
                        return Err(Error::Syntax {
                            pos,
                            msg: "unmatched `)`".into(),
                        })
                    }
                }
            }
        }
    }
    if let Some(pos) = pending_open {
        return Err(Error::Syntax {
            pos,
            msg: "unclosed `(`".into(),
        });
    }
    if let Some((_, pos, _)) = frames.last() {
        return Err(Error::Syntax {
            pos: *pos,
            msg: "unclosed `(`".into(),
        });
    }
    result.ok_or(Error::Syntax {
        pos: text.len(),
        msg: "empty input".into(),
    })
}

/// Print a term in the prefix form accepted by `parse_term`. Constants are
/// emitted bare.
pub fn print_term(t: &Term, sig: &Signature, vars: &VariableSet) -> String {
    enum Frame<'t> {
        Enter(&'t Term),
        Space,
        Close,
    }
    let mut out = String::new();
    let mut work = vec![Frame::Enter(t)];
    while let Some(frame) = work.pop() {
        match frame {
            Frame::Enter(Term::Var(i)) => out.push_str(vars.name(*i)),
            Frame::Enter(Term::App(sym, args)) => {
                if args.is_empty() {
                    out.push_str(sig.name(*sym));
                } else {
                    out.push('(');
                    out.push_str(sig.name(*sym));
                    work.push(Frame::Close);
                    for a in args.iter().rev() {
                        work.push(Frame::Enter(a));
                        work.push(Frame::Space);
                    }
                }
            }
            Frame::Space => out.push(' '),
            Frame::Close => out.push(')'),
        }
    }
    out
}
