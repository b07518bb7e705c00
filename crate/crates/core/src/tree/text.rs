//! Parenthesized tree text: a leaf is its vertex id, an internal node is
//! `(left,right)`. Output always lists the child holding the smaller leaf id
//! first, so equal trees serialize identically.

use super::{ClusterTree, Node, NodeId, TreeBuilder};
use crate::error::{HcError, Result};

pub fn tree_to_text(tree: &ClusterTree) -> String {
    fn min_leaf(tree: &ClusterTree, id: NodeId, mins: &mut [usize]) -> usize {
        let m = match tree.node(id) {
            Node::Leaf(v) => v,
            Node::Internal { left, right } => {
                min_leaf(tree, left, mins).min(min_leaf(tree, right, mins))
            }
        };
        mins[id] = m;
        m
    }
    fn write(tree: &ClusterTree, id: NodeId, mins: &[usize], out: &mut String) {
        match tree.node(id) {
            Node::Leaf(v) => out.push_str(&v.to_string()),
            Node::Internal { left, right } => {
                let (a, b) = if mins[left] <= mins[right] {
                    (left, right)
                } else {
                    (right, left)
                };
                out.push('(');
                write(tree, a, mins, out);
                out.push(',');
                write(tree, b, mins, out);
                out.push(')');
            }
        }
    }

    let mut mins = vec![usize::MAX; tree.nodes.len()];
    min_leaf(tree, tree.root(), &mut mins);
    let mut out = String::with_capacity(tree.n() * 4);
    write(tree, tree.root(), &mins, &mut out);
    out
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    builder: TreeBuilder,
}

impl Parser<'_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let line = 1 + self.text[..self.pos.min(self.text.len())]
            .iter()
            .filter(|&&c| c == b'\n')
            .count();
        Err(HcError::Parse {
            line,
            message: format!("{} (at byte {})", message.into(), self.pos),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.error(format!("expected `{}`, found `{}`", c as char, got as char)),
            None => self.error(format!("expected `{}`, found end of input", c as char)),
        }
    }

    fn node(&mut self) -> Result<NodeId> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let left = self.node()?;
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => return self.error("internal node has a single child"),
                    _ => return self.error("expected `,`"),
                }
                let right = self.node()?;
                if self.peek() == Some(b',') {
                    return self.error("internal node has more than two children");
                }
                self.expect(b')')?;
                Ok(self.builder.join(left, right))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii");
                match digits.parse() {
                    Ok(v) => Ok(self.builder.leaf(v)),
                    Err(_) => self.error(format!("leaf id `{digits}` too large")),
                }
            }
            Some(c) => self.error(format!("unexpected `{}`", c as char)),
            None => self.error("unexpected end of input"),
        }
    }
}

pub fn tree_from_text(text: &str) -> Result<ClusterTree> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        builder: TreeBuilder::new(),
    };
    let root = p.node()?;
    if let Some(c) = p.peek() {
        return p.error(format!("trailing input starting with `{}`", c as char));
    }
    p.builder.finish(root).map_err(|e| match e {
        HcError::InvalidArgument(msg) => HcError::Parse {
            line: 1,
            message: msg,
        },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn serializes_with_smallest_leaf_first() {
        let mut b = TreeBuilder::new();
        let l2 = b.leaf(2);
        let l1 = b.leaf(1);
        let inner = b.join(l2, l1);
        let l0 = b.leaf(0);
        let root = b.join(inner, l0);
        let tree = b.finish(root).unwrap();
        assert_eq!(tree_to_text(&tree), "(0,(1,2))");
    }

    #[test]
    fn parses_and_round_trips() {
        for text in ["0", "(0,1)", "(0,(1,2))", "((0,3),(1,2))", "(((0,1),2),3)"] {
            assert_eq!(tree_to_text(&tree_from_text(text).unwrap()), text);
        }
        let spaced = tree_from_text(" ( 2 ,\n ( 0 , 1 ) ) ").unwrap();
        assert_eq!(tree_to_text(&spaced), "((0,1),2)");
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in [
            "(0,(1,1))", // duplicate leaf
            "(0,2)",     // leaf 1 missing
            "(0,(1,2)",  // unbalanced
            "(0,1))",    // trailing paren
            "(0,1,2)",   // ternary
            "(0)",       // unary
            "",
            "(a,b)",
        ] {
            assert!(
                matches!(tree_from_text(bad), Err(HcError::Parse { .. })),
                "accepted {bad:?}"
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn random_trees_round_trip(n in 1usize..40, seed in any::<u64>()) {
            let tree = crate::algorithms::random_tree(n, seed);
            let text = tree_to_text(&tree);
            let back = tree_from_text(&text).unwrap();
            prop_assert_eq!(tree_to_text(&back), text);
            prop_assert_eq!(back, tree);
        }
    }
}
