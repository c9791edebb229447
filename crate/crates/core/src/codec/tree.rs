use crate::bitio::BitCursor;
use crate::code_builder::CanonicalCode;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
enum Node {
    Inner([u32; 2]),
    Leaf(u32),
}

/// Pointer-based code tree, walked one bit at a time.
#[derive(Debug, Clone)]
pub struct CodeTree {
    nodes: Vec<Node>,
}

impl CodeTree {
    pub fn new(code: &CanonicalCode) -> Self {
        let mut nodes = vec![Node::Inner([NONE, NONE])];
        for (symbol, c) in code.codewords() {
            let mut at = 0usize;
            for i in (0..c.len).rev() {
                let bit = ((c.bits >> i) & 1) as usize;
                let Node::Inner(children) = nodes[at] else {
                    unreachable!("prefix-free code");
                };
                let next = if children[bit] == NONE {
                    let id = nodes.len() as u32;
                    nodes.push(if i == 0 {
                        Node::Leaf(symbol)
                    } else {
                        Node::Inner([NONE, NONE])
                    });
                    if let Node::Inner(ch) = &mut nodes[at] {
                        ch[bit] = id;
                    }
                    id
                } else {
                    children[bit]
                };
                at = next as usize;
            }
        }
        Self { nodes }
    }

    /// Decodes one symbol, returning it with the number of bits consumed.
    pub fn decode(&self, cursor: &mut BitCursor<'_>) -> Result<(u32, u32)> {
        let mut at = 0usize;
        let mut steps = 0u32;
        loop {
            match self.nodes[at] {
                Node::Leaf(symbol) => return Ok((symbol, steps)),
                Node::Inner(children) => {
                    let bit = cursor.read(1).map_err(exhausted)? as usize;
                    steps += 1;
                    if children[bit] == NONE {
                        return Err(Error::Corrupt("bit sequence walks off the code tree".into()));
                    }
                    at = children[bit] as usize;
                }
            }
        }
    }
}

pub(crate) fn exhausted(e: Error) -> Error {
    match e {
        Error::EndOfStream { offset, .. } => {
            Error::Corrupt(format!("payload exhausted at bit {offset}"))
        }
        other => other,
    }
}
