use super::ExpressionError;
use std::fmt;

/// An untyped s-expression: an atom or a parenthesized list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExpr {
    Atom(String),
    List(Vec<SExpr>),
}

impl SExpr {
    pub fn atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom(a) => Some(a),
            SExpr::List(_) => None,
        }
    }

    /// The head symbol and arguments of a non-empty list.
    pub fn call(&self) -> Option<(&str, &[SExpr])> {
        match self {
            SExpr::List(items) => match items.split_first() {
                Some((SExpr::Atom(head), args)) => Some((head, args)),
                _ => None,
            },
            SExpr::Atom(_) => None,
        }
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Atom(a) => f.write_str(a),
            SExpr::List(items) => {
                f.write_str("(")?;
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{}", item)?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Parses exactly one s-expression.
pub fn parse(text: &str) -> Result<SExpr, ExpressionError> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in text.chars() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if !current.is_empty() {
                tokens.push(std::mem::take(&mut current));
            }
            if !c.is_whitespace() {
                tokens.push(c.to_string());
            }
        } else {
            current.push(c);
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    let mut position = 0;
    let expr = read(&tokens, &mut position)?;
    if position < tokens.len() {
        return Err(ExpressionError::Tokenize(format!(
            "unexpected `{}` after a complete expression",
            tokens[position]
        )));
    }
    Ok(expr)
}

fn read(tokens: &[String], position: &mut usize) -> Result<SExpr, ExpressionError> {
    let token = tokens
        .get(*position)
        .ok_or_else(|| ExpressionError::Tokenize("unexpected end of expression".into()))?;
    *position += 1;
    match token.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*position).map(String::as_str) {
                    None => return Err(ExpressionError::Tokenize("missing `)`".into())),
                    Some(")") => {
                        *position += 1;
                        break;
                    }
                    Some(_) => items.push(read(tokens, position)?),
                }
            }
            if items.is_empty() {
                return Err(ExpressionError::Tokenize("empty list `()`".into()));
            }
            Ok(SExpr::List(items))
        }
        ")" => Err(ExpressionError::Tokenize("unbalanced `)`".into())),
        atom => Ok(SExpr::Atom(atom.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_lists() {
        let e = parse("(max (+ t (c i j)) (a j))").unwrap();
        assert_eq!(e.to_string(), "(max (+ t (c i j)) (a j))");
        let (head, args) = e.call().unwrap();
        assert_eq!(head, "max");
        assert_eq!(args.len(), 2);
    }

    #[test]
    fn atoms_and_errors() {
        assert_eq!(parse("  U ").unwrap(), SExpr::Atom("U".into()));
        assert!(parse("").is_err());
        assert!(parse("(+ 1 2").is_err());
        assert!(parse("(+ 1 2))").is_err());
        assert!(parse("a b").is_err());
        assert!(parse("()").is_err());
    }
}
