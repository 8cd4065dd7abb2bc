use super::{DiagramError, PlanarDiagram};

/// Parses `PD[X(a,b,c,d), ...]` with an optional ` components=N` suffix.
///
/// Square brackets are accepted in place of the parentheses around each
/// crossing (`X[a,b,c,d]`). `PD[]` is the crossingless unknot.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    lx.expect_word("PD")?;
    lx.expect(b'[')?;
    let mut crossings = Vec::new();
    if lx.peek() != Some(b']') {
        loop {
            lx.expect_word("X")?;
            let close = match lx.next() {
                Some(b'(') => b')',
                Some(b'[') => b']',
                _ => return Err(lx.error("expected '(' after X")),
            };
            let mut c = [0u32; 4];
            for (i, slot) in c.iter_mut().enumerate() {
                if i > 0 {
                    lx.expect(b',')?;
                }
                *slot = lx.number()?;
            }
            lx.expect(close)?;
            crossings.push(c);
            match lx.peek() {
                Some(b',') => {
                    lx.pos += 1;
                }
                _ => break,
            }
        }
    }
    lx.expect(b']')?;
    let mut components = None;
    if lx.peek().is_some() {
        lx.expect_word("components")?;
        lx.expect(b'=')?;
        components = Some(lx.number()? as usize);
    }
    if lx.peek().is_some() {
        return Err(lx.error("trailing input"));
    }
    PlanarDiagram::new(crossings, components)
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn error(&self, message: &str) -> DiagramError {
        DiagramError::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn expect(&mut self, b: u8) -> Result<(), DiagramError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    fn expect_word(&mut self, word: &str) -> Result<(), DiagramError> {
        self.peek();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{word}'")))
        }
    }

    fn number(&mut self) -> Result<u32, DiagramError> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("number out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_bracket_variants_and_whitespace() {
        let a = parse_pd("PD[X[3,1,4,6], X[1,5,2,4], X[5,3,6,2]]").unwrap();
        let b = parse_pd("  PD[ X(3, 1, 4, 6),X(1,5,2,4) ,X(5,3,6,2) ] ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse_pd("X(1,2,3,4)"),
            Err(DiagramError::Syntax { .. })
        ));
        assert!(matches!(
            parse_pd("PD[X(1,2,3)]"),
            Err(DiagramError::Syntax { .. })
        ));
        assert!(matches!(
            parse_pd("PD[X(1,2,3,4)"),
            Err(DiagramError::Syntax { .. })
        ));
        assert!(matches!(
            parse_pd("PD[] extra"),
            Err(DiagramError::Syntax { .. })
        ));
        assert!(matches!(
            parse_pd("PD[X(0,1,1,0)]"),
            Err(DiagramError::ZeroLabel)
        ));
    }

    #[test]
    fn empty_code_is_unknot() {
        let d = parse_pd("PD[]").unwrap();
        assert!(d.is_knot());
        assert_eq!(d.num_crossings(), 0);
        assert!(parse_pd("PD[] components=2").is_err());
    }
}
