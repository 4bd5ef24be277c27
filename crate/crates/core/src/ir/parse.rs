use crate::error::{Error, Result};
use crate::layout::ModeKind;

use super::{is_identifier, validate, Circuit, Diagnostic, GateKind, GateSpec, Instruction, MeasureBasis, ModeDecl, Span};

const KEYWORDS: [&str; 7] = ["qubit", "qumode", "rotor", "measure", "reset", "barrier", "circuit"];

pub(crate) fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64, String),
    LBracket,
    RBracket,
    Semi,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: Span,
}

fn lex(text: &str) -> Result<(Vec<Token>, Span)> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let ch = chars[i];
        let span = Span { line, col };
        if ch == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if ch == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let single = match ch {
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, span });
            i += 1;
            col += 1;
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Ident(word), span });
            continue;
        }
        let starts_number = ch.is_ascii_digit()
            || ch == '.'
            || ((ch == '-' || ch == '+')
                && chars.get(i + 1).is_some_and(|n| n.is_ascii_digit() || *n == '.'));
        if starts_number {
            let start = i;
            i += 1;
            while i < chars.len() {
                let c = chars[i];
                let after_exp = matches!(chars[i - 1], 'e' | 'E');
                if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || ((c == '-' || c == '+') && after_exp) {
                    i += 1;
                } else {
                    break;
                }
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let value: f64 = word
                .parse()
                .map_err(|_| Error::parse(span, format!("malformed number `{word}`")))?;
            out.push(Token { tok: Tok::Number(value, word), span });
            continue;
        }
        return Err(Error::parse(span, format!("unexpected character `{ch}`")));
    }
    Ok((out, Span { line, col }))
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    eof: Span,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> Span {
        self.peek().map(|t| t.span).unwrap_or(self.eof)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Span> {
        let span = self.here();
        match self.next() {
            Some(t) if t.tok == want => Ok(t.span),
            Some(t) => Err(Error::parse(t.span, format!("expected {what}, found {}", describe(&t.tok)))),
            None => Err(Error::parse(span, format!("expected {what}, found end of input"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Span)> {
        let span = self.here();
        match self.next() {
            Some(Token { tok: Tok::Ident(s), span }) => Ok((s, span)),
            Some(t) => Err(Error::parse(t.span, format!("expected {what}, found {}", describe(&t.tok)))),
            None => Err(Error::parse(span, format!("expected {what}, found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<usize> {
        let span = self.here();
        match self.next() {
            Some(Token { tok: Tok::Number(_, text), span }) => {
                text.parse().map_err(|_| Error::parse(span, format!("expected a non-negative integer, found `{text}`")))
            }
            Some(t) => Err(Error::parse(t.span, format!("expected an integer, found {}", describe(&t.tok)))),
            None => Err(Error::parse(span, "expected an integer, found end of input")),
        }
    }

    fn number(&mut self, what: &str) -> Result<f64> {
        let span = self.here();
        match self.next() {
            Some(Token { tok: Tok::Number(v, _), .. }) => Ok(v),
            Some(t) => Err(Error::parse(t.span, format!("expected {what}, found {}", describe(&t.tok)))),
            None => Err(Error::parse(span, format!("expected {what}, found end of input"))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Number(_, s) => format!("number `{s}`"),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::Semi => "`;`".into(),
    }
}

fn resolve(circuit: &Circuit, name: &str, span: Span) -> Result<usize> {
    circuit
        .mode_index(name)
        .ok_or_else(|| Error::parse(span, format!("undeclared mode `{name}`")))
}

/// Parses and validates `.hcir` text.
///
/// Lexical and syntactic problems (including unknown gates and undeclared
/// modes) are returned as [`Error::Parse`]; typing problems found by
/// [`validate`] as [`Error::Validation`] with their source positions.
pub fn parse(text: &str) -> Result<Circuit> {
    let (toks, eof) = lex(text)?;
    let mut p = Parser { toks, pos: 0, eof };
    let mut circuit = Circuit::new();
    while let Some(first) = p.next() {
        let span = first.span;
        let word = match first.tok {
            Tok::Ident(w) => w,
            Tok::Semi => continue,
            other => return Err(Error::parse(span, format!("expected a statement, found {}", describe(&other)))),
        };
        match word.as_str() {
            "circuit" => {
                let (name, nspan) = p.ident("circuit name")?;
                if circuit.name().is_some() {
                    return Err(Error::parse(nspan, "circuit name given twice"));
                }
                circuit.set_name(name);
            }
            "qubit" | "qumode" | "rotor" => {
                let kind = match word.as_str() {
                    "qubit" => ModeKind::Qubit,
                    kw => {
                        p.expect(Tok::LBracket, "`[`")?;
                        let size_span = p.here();
                        let n = p.integer()?;
                        p.expect(Tok::RBracket, "`]`")?;
                        let kind = if kw == "qumode" { ModeKind::qumode(n) } else { ModeKind::rotor(n) };
                        kind.validate().map_err(|e| Error::parse(size_span, e.to_string()))?;
                        kind
                    }
                };
                let (name, nspan) = p.ident("mode name")?;
                if is_keyword(&name) || !is_identifier(&name) {
                    return Err(Error::parse(nspan, format!("`{name}` is reserved")));
                }
                if circuit.mode_index(&name).is_some() {
                    return Err(Error::parse(nspan, format!("mode `{name}` declared twice")));
                }
                circuit.push_decl(ModeDecl { name, kind });
            }
            "measure" => {
                let (name, nspan) = p.ident("mode name")?;
                let mode = resolve(&circuit, &name, nspan)?;
                let (basis_word, bspan) = p.ident("measurement basis (z, fock or homodyne)")?;
                let basis = match basis_word.as_str() {
                    "z" => MeasureBasis::Z,
                    "fock" => MeasureBasis::Fock,
                    "homodyne" => MeasureBasis::Homodyne(p.number("homodyne angle")?),
                    other => return Err(Error::parse(bspan, format!("unknown measurement basis `{other}`"))),
                };
                circuit.push_unchecked(Instruction::Measure { mode, basis }, span);
            }
            "reset" => {
                let (name, nspan) = p.ident("mode name")?;
                let mode = resolve(&circuit, &name, nspan)?;
                circuit.push_unchecked(Instruction::Reset { mode }, span);
            }
            "barrier" => circuit.push_unchecked(Instruction::Barrier, span),
            mnemonic => {
                let kind = GateKind::from_mnemonic(mnemonic)
                    .ok_or_else(|| Error::parse(span, format!("unknown gate `{mnemonic}`")))?;
                let mut targets = Vec::new();
                let mut params = Vec::new();
                loop {
                    match p.peek().map(|t| t.tok.clone()) {
                        Some(Tok::Ident(name)) if params.is_empty() => {
                            let t = p.next().expect("peeked");
                            targets.push(resolve(&circuit, &name, t.span)?);
                        }
                        Some(Tok::Number(v, _)) => {
                            p.next();
                            params.push(v);
                        }
                        _ => break,
                    }
                }
                circuit.push_unchecked(Instruction::Gate(GateSpec { kind, targets, params }), span);
            }
        }
        p.expect(Tok::Semi, "`;`")?;
    }
    let errors: Vec<Diagnostic> = validate(&circuit).into_iter().filter(Diagnostic::is_error).collect();
    if !errors.is_empty() {
        return Err(Error::Validation(errors));
    }
    Ok(circuit)
}
