use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::tree::PhyloTree;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("newick parse error at byte {position}: {message}")]
pub struct NewickError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: &str) -> Result<T, NewickError> {
        Err(NewickError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    /// Skip whitespace and `[...]` comments.
    fn skip_ws(&mut self) -> Result<(), NewickError> {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('[') => {
                    let start = self.pos;
                    match self.text[self.pos..].find(']') {
                        Some(end) => self.pos += end + 1,
                        None => {
                            self.pos = start;
                            return self.err("unterminated comment");
                        }
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn label(&mut self) -> Result<Option<String>, NewickError> {
        self.skip_ws()?;
        if self.peek() == Some('\'') {
            self.bump();
            let mut out = String::new();
            loop {
                match self.bump() {
                    Some('\'') if self.peek() == Some('\'') => {
                        self.bump();
                        out.push('\'');
                    }
                    Some('\'') => return Ok(Some(out)),
                    Some(c) => out.push(c),
                    None => return self.err("unterminated quoted label"),
                }
            }
        }
        let start = self.pos;
        while let Some(c) = self.peek() {
            if "(),:;[".contains(c) || c.is_whitespace() {
                break;
            }
            self.bump();
        }
        if self.pos == start {
            Ok(None)
        } else {
            Ok(Some(self.text[start..self.pos].replace('_', " ")))
        }
    }

    fn length(&mut self) -> Result<Option<f64>, NewickError> {
        self.skip_ws()?;
        if self.peek() != Some(':') {
            return Ok(None);
        }
        self.bump();
        self.skip_ws()?;
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || "+-.eE".contains(c) {
                self.bump();
            } else {
                break;
            }
        }
        match self.text[start..self.pos].parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Some(v)),
            _ => {
                self.pos = start;
                self.err("invalid branch length")
            }
        }
    }

    /// Parse one subtree below `parent` (or as the root when `None`).
    fn subtree(&mut self, tree: &mut PhyloTree, node: usize) -> Result<(), NewickError> {
        self.skip_ws()?;
        if self.peek() == Some('(') {
            self.bump();
            loop {
                let child = tree.add_child(node, None, None);
                self.subtree(tree, child)?;
                self.skip_ws()?;
                match self.bump() {
                    Some(',') => continue,
                    Some(')') => break,
                    _ => {
                        self.pos = self.pos.saturating_sub(1);
                        return self.err("expected ',' or ')'");
                    }
                }
            }
            let label = self.label()?;
            if let Some(l) = &label {
                if let Ok(v) = l.parse::<f64>() {
                    if (0.0..=1.0).contains(&v) {
                        tree.node_mut(node).support = Some(v);
                    }
                }
            }
            tree.node_mut(node).label = label;
        } else {
            let label = self.label()?;
            if label.is_none() {
                return self.err("expected a label or '('");
            }
            tree.node_mut(node).label = label;
        }
        let len = self.length()?;
        tree.node_mut(node).length = len;
        Ok(())
    }
}

/// Parse a single Newick tree terminated by `;`.
pub fn parse_newick(text: &str) -> Result<PhyloTree, NewickError> {
    let mut p = Parser { text, pos: 0 };
    let mut tree = PhyloTree::with_root(None);
    let root = tree.root();
    p.subtree(&mut tree, root)?;
    p.skip_ws()?;
    if p.bump() != Some(';') {
        p.pos = p.pos.saturating_sub(1).min(text.len());
        return p.err("expected ';'");
    }
    p.skip_ws()?;
    if p.pos != text.len() {
        return p.err("trailing text after ';'");
    }
    if let Err(e) = tree.validate() {
        return Err(NewickError {
            position: text.len(),
            message: format!("{e}"),
        });
    }
    Ok(tree)
}

fn write_label(out: &mut String, label: &str) {
    let plain = !label.is_empty()
        && !label
            .chars()
            .any(|c| "(),:;[]'_".contains(c) || (c.is_whitespace() && c != ' '));
    if plain {
        out.push_str(&label.replace(' ', "_"));
    } else {
        out.push('\'');
        out.push_str(&label.replace('\'', "''"));
        out.push('\'');
    }
}

/// Serialize in the tree's current child order. When `supports` is true,
/// internal nodes carry their support value as the node label; otherwise
/// their stored label (if any) is written.
pub fn emit_newick(tree: &PhyloTree, supports: bool) -> String {
    let mut out = String::new();
    // (node, next child position)
    let mut stack: Vec<(usize, usize)> = alloc::vec![(tree.root(), 0)];
    while let Some((n, k)) = stack.pop() {
        let node = tree.node(n);
        if node.is_leaf() {
            write_label(&mut out, node.label.as_deref().unwrap_or(""));
            write_length(&mut out, tree, n);
            continue;
        }
        if k == 0 {
            out.push('(');
        }
        if k < node.children.len() {
            if k > 0 {
                out.push(',');
            }
            stack.push((n, k + 1));
            stack.push((node.children[k], 0));
            continue;
        }
        out.push(')');
        if supports {
            if let Some(s) = node.support {
                out.push_str(&format!("{s}"));
            }
        } else if let Some(l) = &node.label {
            write_label(&mut out, l);
        }
        write_length(&mut out, tree, n);
    }
    out.push(';');
    out
}

fn write_length(out: &mut String, tree: &PhyloTree, n: usize) {
    if let Some(l) = tree.node(n).length {
        out.push_str(&format!(":{l}"));
    }
}
