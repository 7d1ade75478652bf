use super::{Generator, GroupSpec, Letter, Word};
use crate::error::{Error, Result};

/// Parses whitespace-separated tokens `r<i>`, `s<i>,<t>`, each optionally
/// suffixed with `^-1`, and validates indices against `spec`.
pub fn parse_word(text: &str, spec: &GroupSpec) -> Result<Word> {
    let mut letters = Vec::new();
    let mut pos = 0;
    for token in text.split_ascii_whitespace() {
        let start = pos + text[pos..].find(token).expect("token comes from text");
        pos = start + token.len();
        let syntax = |msg: &str| Error::Syntax {
            pos: start,
            msg: format!("{} in `{}`", msg, token),
        };
        let (body, exponent) = match token.strip_suffix("^-1") {
            Some(b) => (b, -1),
            None => (token, 1),
        };
        let number = |s: &str| -> Result<usize> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax("expected a positive integer"));
            }
            s.parse().map_err(|_| syntax("index too large"))
        };
        let generator = if let Some(rest) = body.strip_prefix('r') {
            Generator::Rho(number(rest)?)
        } else if let Some(rest) = body.strip_prefix('s') {
            let (i, t) = rest
                .split_once(',')
                .ok_or_else(|| syntax("expected `s<i>,<t>`"))?;
            Generator::Sigma(number(i)?, number(t)?)
        } else {
            return Err(syntax("expected `r<i>` or `s<i>,<t>`"));
        };
        spec.check_generator(generator)?;
        letters.push(Letter::new(generator, exponent));
    }
    Ok(Word::from_letters(letters))
}

/// Free cancellation together with `rho_i^2 = 1` and `sigma_{i,t}^2 = 1`
/// for the involutive types of `spec`. Involutive inverses are rewritten
/// to the positive letter.
pub fn free_reduce(w: &Word, spec: &GroupSpec) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let involutive = spec.is_involutive(l.generator);
        let l = if involutive {
            Letter::new(l.generator, 1)
        } else {
            l
        };
        match stack.last() {
            Some(top)
                if top.generator == l.generator && (involutive || top.exponent == -l.exponent) =>
            {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    Word::from_letters(stack)
}

/// Normal form in the two-strand group, the free product of the free group
/// on `sigma_{1,1}..sigma_{1,c}` with the order-two group on `rho_1`:
/// freely reduced sigma syllables separated by single `rho_1` letters.
pub fn normal_form_n2(w: &Word, spec: &GroupSpec) -> Result<Word> {
    if spec.n != 2 {
        return Err(Error::InvalidGroup(format!(
            "normal form is only available for n = 2, got n = {}",
            spec.n
        )));
    }
    spec.check_word(w)?;
    Ok(free_reduce(w, spec))
}
