use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::lexer::{tokenize, Cursor, Tok};
use super::ParseError;

pub const QUANTUM_STEREOTYPE: &str = "Quantum";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Visibility {
    Public,
    Private,
    Protected,
}

impl Visibility {
    pub fn symbol(self) -> char {
        match self {
            Visibility::Public => '+',
            Visibility::Private => '-',
            Visibility::Protected => '#',
        }
    }
}

/// Syntax tree of a class diagram. Top-level classes that sit outside any
/// package are kept in `classes`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ClassModel {
    pub packages: Vec<PackageNode>,
    pub classes: Vec<ClassNode>,
    pub associations: Vec<AssociationNode>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PackageNode {
    pub name: String,
    pub stereotype: Option<String>,
    pub packages: Vec<PackageNode>,
    pub classes: Vec<ClassNode>,
}

impl PackageNode {
    pub fn is_quantum(&self) -> bool {
        self.stereotype.as_deref() == Some(QUANTUM_STEREOTYPE)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassNode {
    pub name: String,
    pub stereotype: Option<String>,
    pub attributes: Vec<AttributeNode>,
    pub operations: Vec<OperationNode>,
}

impl ClassNode {
    pub fn is_quantum(&self) -> bool {
        self.stereotype.as_deref() == Some(QUANTUM_STEREOTYPE)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeNode {
    pub name: String,
    pub ty: String,
    pub visibility: Option<Visibility>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperationNode {
    pub name: String,
    pub params: Vec<ParamNode>,
    pub return_type: Option<String>,
    pub visibility: Option<Visibility>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamNode {
    pub name: String,
    pub ty: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssociationNode {
    pub source: String,
    pub target: String,
    pub label: Option<String>,
}

impl ClassModel {
    /// Depth-first walk over every class, in declaration order.
    pub fn all_classes(&self) -> Vec<&ClassNode> {
        fn walk<'a>(p: &'a PackageNode, out: &mut Vec<&'a ClassNode>) {
            out.extend(p.classes.iter());
            for sub in &p.packages {
                walk(sub, out);
            }
        }
        let mut out = Vec::new();
        for p in &self.packages {
            walk(p, &mut out);
        }
        out.extend(self.classes.iter());
        out
    }

    pub fn package_count(&self) -> usize {
        fn count(p: &PackageNode) -> usize {
            1 + p.packages.iter().map(count).sum::<usize>()
        }
        self.packages.iter().map(count).sum()
    }
}

/// Parses a class diagram.
///
/// Accepted items are `package NAME [<<S>>] { ... }`, `class NAME [<<S>>] { members }`
/// and `A --> B [: label]`; `@startuml`/`@enduml` and `'` comments are ignored.
pub fn parse_class_diagram(source: &str) -> Result<ClassModel, ParseError> {
    let mut p = ClassParser {
        cur: Cursor::new(tokenize(source)?),
        pending_assocs: Vec::new(),
        declared: HashMap::new(),
    };
    let mut model = ClassModel::default();
    let mut scope = Scope::default();
    loop {
        p.cur.skip_newlines();
        if p.cur.at(&Tok::Eof) {
            break;
        }
        if p.cur.at(&Tok::RBrace) {
            return Err(p.cur.error("`package`, `class` or an association"));
        }
        match p.item(&mut scope)? {
            Item::Package(pkg) => model.packages.push(pkg),
            Item::Class(cls) => model.classes.push(cls),
            Item::Nothing => {}
        }
    }
    for (assoc, positions) in std::mem::take(&mut p.pending_assocs) {
        for (name, (line, column)) in [&assoc.source, &assoc.target].into_iter().zip(positions) {
            if !p.declared.contains_key(name) {
                return Err(ParseError::new(
                    line,
                    column,
                    "a declared class name",
                    format!("`{name}`"),
                ));
            }
        }
        model.associations.push(assoc);
    }
    Ok(model)
}

enum Item {
    Package(PackageNode),
    Class(ClassNode),
    Nothing,
}

#[derive(Default)]
struct Scope {
    packages: HashMap<String, (usize, usize)>,
    classes: HashMap<String, (usize, usize)>,
}

type Pos = (usize, usize);

struct ClassParser {
    cur: Cursor,
    pending_assocs: Vec<(AssociationNode, [Pos; 2])>,
    declared: HashMap<String, Pos>,
}

fn duplicate(kind: &str, name: &str, at: Pos, first: Pos) -> ParseError {
    ParseError::new(
        at.0,
        at.1,
        format!("a unique {kind} name"),
        format!("`{name}` (already declared at {}:{})", first.0, first.1),
    )
}

impl ClassParser {
    fn item(&mut self, scope: &mut Scope) -> Result<Item, ParseError> {
        let tok = self.cur.peek().clone();
        match &tok.tok {
            Tok::Directive(_) => {
                self.cur.bump();
                self.cur.expect_line_end()?;
                Ok(Item::Nothing)
            }
            Tok::Ident(word) if word == "package" => {
                self.cur.bump();
                let (name, name_tok) = self.cur.expect_ident("package name")?;
                let pos = (name_tok.line, name_tok.column);
                if let Some(first) = scope.packages.get(&name) {
                    return Err(duplicate("package", &name, pos, *first));
                }
                scope.packages.insert(name.clone(), pos);
                let stereotype = self.stereotype()?;
                let open = self.cur.expect(&Tok::LBrace, "`{`")?;
                let mut pkg = PackageNode {
                    name,
                    stereotype,
                    packages: Vec::new(),
                    classes: Vec::new(),
                };
                let mut inner = Scope::default();
                loop {
                    self.cur.skip_newlines();
                    if self.cur.eat(&Tok::RBrace) {
                        break;
                    }
                    if self.cur.at(&Tok::Eof) {
                        return Err(ParseError::new(
                            open.line,
                            open.column,
                            "`}` closing this package",
                            "end of input",
                        ));
                    }
                    match self.item(&mut inner)? {
                        Item::Package(sub) => pkg.packages.push(sub),
                        Item::Class(cls) => pkg.classes.push(cls),
                        Item::Nothing => {}
                    }
                }
                Ok(Item::Package(pkg))
            }
            Tok::Ident(word) if word == "class" => {
                self.cur.bump();
                let (name, name_tok) = self.cur.expect_ident("class name")?;
                let pos = (name_tok.line, name_tok.column);
                if let Some(first) = scope.classes.get(&name) {
                    return Err(duplicate("class", &name, pos, *first));
                }
                scope.classes.insert(name.clone(), pos);
                self.declared.entry(name.clone()).or_insert(pos);
                let stereotype = self.stereotype()?;
                let mut cls = ClassNode {
                    name,
                    stereotype,
                    attributes: Vec::new(),
                    operations: Vec::new(),
                };
                if self.cur.at(&Tok::LBrace) {
                    let open = self.cur.bump();
                    self.members(&mut cls, (open.line, open.column))?;
                } else {
                    self.end_item()?;
                }
                Ok(Item::Class(cls))
            }
            Tok::Ident(source) if matches!(self.cur.peek_at(1).tok, Tok::DashedArrow) => {
                let source = source.clone();
                self.cur.bump();
                self.cur.bump();
                let (target, target_tok) = self.cur.expect_ident("association target class")?;
                let label = if self.cur.eat(&Tok::Colon) {
                    Some(self.label()?)
                } else {
                    None
                };
                self.end_item()?;
                self.pending_assocs.push((
                    AssociationNode {
                        source,
                        target,
                        label,
                    },
                    [(tok.line, tok.column), (target_tok.line, target_tok.column)],
                ));
                Ok(Item::Nothing)
            }
            _ => Err(self.cur.error("`package`, `class` or an association")),
        }
    }

    fn end_item(&mut self) -> Result<(), ParseError> {
        if self.cur.at(&Tok::RBrace) {
            Ok(())
        } else {
            self.cur.expect_line_end()
        }
    }

    fn stereotype(&mut self) -> Result<Option<String>, ParseError> {
        if !self.cur.eat(&Tok::StereoOpen) {
            return Ok(None);
        }
        let (name, _) = self.cur.expect_ident("stereotype name")?;
        self.cur.expect(&Tok::StereoClose, "`>>`")?;
        Ok(Some(name))
    }

    fn label(&mut self) -> Result<String, ParseError> {
        let mut words = Vec::new();
        loop {
            match &self.cur.peek().tok {
                Tok::Ident(w) | Tok::Str(w) => words.push(w.clone()),
                Tok::Number(n) => words.push(n.to_string()),
                _ => break,
            }
            self.cur.bump();
        }
        if words.is_empty() {
            return Err(self.cur.error("association label"));
        }
        Ok(words.join(" "))
    }

    fn visibility(&mut self) -> Option<Visibility> {
        let vis = match self.cur.peek().tok {
            Tok::Plus => Visibility::Public,
            Tok::Minus => Visibility::Private,
            Tok::Hash => Visibility::Protected,
            _ => return None,
        };
        self.cur.bump();
        Some(vis)
    }

    fn type_name(&mut self) -> Result<String, ParseError> {
        let (mut ty, _) = self.cur.expect_ident("type name")?;
        if self.cur.eat(&Tok::LBracket) {
            let mut args = vec![self.type_name()?];
            while self.cur.eat(&Tok::Comma) {
                args.push(self.type_name()?);
            }
            self.cur.expect(&Tok::RBracket, "`]`")?;
            ty = format!("{ty}[{}]", args.join(", "));
        }
        Ok(ty)
    }

    fn members(&mut self, cls: &mut ClassNode, open: Pos) -> Result<(), ParseError> {
        let mut seen: HashMap<String, Pos> = HashMap::new();
        loop {
            self.cur.skip_newlines();
            if self.cur.eat(&Tok::RBrace) {
                return Ok(());
            }
            if self.cur.at(&Tok::Eof) {
                return Err(ParseError::new(
                    open.0,
                    open.1,
                    "`}` closing this class",
                    "end of input",
                ));
            }
            let visibility = self.visibility();
            let (name, name_tok) = self.cur.expect_ident("attribute or operation name")?;
            let pos = (name_tok.line, name_tok.column);
            if let Some(first) = seen.get(&name) {
                return Err(duplicate("member", &name, pos, *first));
            }
            seen.insert(name.clone(), pos);

            if self.cur.eat(&Tok::LParen) {
                let mut params = Vec::new();
                let mut param_names: HashMap<String, Pos> = HashMap::new();
                if !self.cur.at(&Tok::RParen) {
                    loop {
                        let (pname, ptok) = self.cur.expect_ident("parameter name")?;
                        let ppos = (ptok.line, ptok.column);
                        if let Some(first) = param_names.get(&pname) {
                            return Err(duplicate("parameter", &pname, ppos, *first));
                        }
                        param_names.insert(pname.clone(), ppos);
                        self.cur.expect(&Tok::Colon, "`:` before parameter type")?;
                        let ty = self.type_name()?;
                        params.push(ParamNode { name: pname, ty });
                        if !self.cur.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                self.cur.expect(&Tok::RParen, "`)`")?;
                let return_type = if self.cur.eat(&Tok::Colon) {
                    Some(self.type_name()?)
                } else {
                    None
                };
                cls.operations.push(OperationNode {
                    name,
                    params,
                    return_type,
                    visibility,
                });
            } else {
                self.cur
                    .expect(&Tok::Colon, "`:` before attribute type or `(`")?;
                let ty = self.type_name()?;
                cls.attributes.push(AttributeNode {
                    name,
                    ty,
                    visibility,
                });
            }
            if !self.cur.at(&Tok::RBrace) {
                self.cur.expect_line_end()?;
            }
        }
    }
}
