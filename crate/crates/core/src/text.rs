//! Shared tokenizer for the linear-combination grammar
//! `[coeff *] factor factor ... [|0>]` joined by `+`/`-`.

use crate::error::{Error, Result};

/// One summand: its sign, the coefficient text (if any), and the factors.
#[derive(Debug, PartialEq)]
pub(crate) struct Term {
    pub negative: bool,
    pub coeff: Option<String>,
    /// each factor is a head such as `E(+1,-2)` followed by optional
    /// parenthesized suffixes such as `(-1)`
    pub factors: Vec<(String, Vec<String>)>,
    pub vacuum: bool,
}

fn err(s: &str, what: &str) -> Error {
    Error::Parse(format!("{what} in `{s}`"))
}

/// Splits on `+`/`-` at parenthesis depth zero.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(err(s, "unbalanced parentheses"));
        }
        if depth == 0 && (ch == '+' || ch == '-') {
            if cur.trim().is_empty() {
                if ch == '-' {
                    neg = !neg;
                }
            } else {
                out.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            }
            continue;
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(err(s, "unbalanced parentheses"));
    }
    if cur.trim().is_empty() {
        return Err(err(s, "dangling sign or empty expression"));
    }
    out.push((neg, cur));
    Ok(out)
}

/// Reads a parenthesized group starting at `chars[i] == '('`; returns the
/// inner text and the index after the closing parenthesis.
fn group(chars: &[char], i: usize) -> Option<(String, usize)> {
    let mut depth = 0;
    for (j, &c) in chars.iter().enumerate().skip(i) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some((chars[i + 1..j].iter().collect(), j + 1));
                }
            }
            _ => {}
        }
    }
    None
}

fn parse_term(src: &str, negative: bool, body: &str) -> Result<Term> {
    let chars: Vec<char> = body.chars().collect();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && (chars[*i].is_whitespace() || chars[*i] == '*') {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    let mut coeff = None;
    if i < chars.len() && chars[i] == '(' {
        let (inner, j) = group(&chars, i).ok_or_else(|| err(src, "unclosed coefficient"))?;
        coeff = Some(inner);
        i = j;
    } else if i < chars.len() && chars[i].is_ascii_digit() {
        let start = i;
        while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
            i += 1;
        }
        coeff = Some(chars[start..i].iter().collect());
    }
    let mut factors = Vec::new();
    let mut vacuum = false;
    loop {
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
        if vacuum {
            return Err(err(src, "factor after the vacuum"));
        }
        if chars[i] == '|' {
            let rest: String = chars[i..].iter().collect();
            if !rest.starts_with("|0>") {
                return Err(err(src, "malformed vacuum"));
            }
            vacuum = true;
            i += 3;
            continue;
        }
        if !chars[i].is_ascii_alphabetic() {
            return Err(err(src, &format!("unexpected `{}`", chars[i])));
        }
        let head_start = i;
        i += 1;
        let mut j = i;
        while j < chars.len() && chars[j].is_whitespace() {
            j += 1;
        }
        if j >= chars.len() || chars[j] != '(' {
            return Err(err(src, "expected `(` after a basis letter"));
        }
        let (inner, k) = group(&chars, j).ok_or_else(|| err(src, "unclosed label"))?;
        let head = format!("{}({})", chars[head_start], inner);
        i = k;
        let mut suffixes = Vec::new();
        loop {
            let mut j = i;
            while j < chars.len() && chars[j].is_whitespace() {
                j += 1;
            }
            if j < chars.len() && chars[j] == '(' {
                let (inner, k) = group(&chars, j).ok_or_else(|| err(src, "unclosed mode"))?;
                suffixes.push(inner);
                i = k;
            } else {
                break;
            }
        }
        factors.push((head, suffixes));
    }
    if coeff.is_none() && factors.is_empty() && !vacuum {
        return Err(err(src, "empty term"));
    }
    Ok(Term {
        negative,
        coeff,
        factors,
        vacuum,
    })
}

pub(crate) fn parse_terms(s: &str) -> Result<Vec<Term>> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    split_terms(s)?
        .into_iter()
        .map(|(neg, body)| parse_term(s, neg, &body))
        .collect()
}

/// Joins rendered summands, folding a leading `-` into the separator.
pub(crate) fn join_terms(parts: Vec<String>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, p) in parts.into_iter().enumerate() {
        if n == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}
