use std::collections::HashMap;

use super::lexer::{tokenize, Cursor, Tok, Token};
use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParticipantKind {
    Qubit,
    ClassicalBit,
}

impl ParticipantKind {
    pub fn stereotype(self) -> &'static str {
        match self {
            ParticipantKind::Qubit => "qubit",
            ParticipantKind::ClassicalBit => "classical_bit",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Participant {
    pub name: String,
    pub alias: String,
    pub kind: ParticipantKind,
}

/// Role label attached to a message inside a `group` fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Control,
    Controlled,
}

impl Role {
    pub fn stereotype(self) -> &'static str {
        match self {
            Role::Control => "control",
            Role::Controlled => "controlled",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupMessage {
    pub sender: String,
    pub receiver: String,
    pub role: Option<Role>,
}

/// One temporal step of a sequence diagram, in source order.
#[derive(Debug, Clone, PartialEq)]
pub enum Event {
    /// `q0 -> q0 : rz(0.5)`
    SelfMessage {
        qubit: String,
        name: String,
        params: Vec<f64>,
    },
    /// `group cx ... end`
    Group {
        name: String,
        params: Vec<f64>,
        messages: Vec<GroupMessage>,
    },
    /// `alt c0 == 1 ... end`
    Alt {
        clbit: String,
        value: u8,
        body: Vec<Event>,
    },
    /// `q0 -> c0 : measure` from a qubit to a classical bit.
    Measure { qubit: String, clbit: String },
    /// Any other message between two distinct participants.
    Message {
        sender: String,
        receiver: String,
        name: String,
        params: Vec<f64>,
    },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SequenceModel {
    pub participants: Vec<Participant>,
    pub events: Vec<Event>,
}

impl SequenceModel {
    pub fn participant(&self, alias: &str) -> Option<&Participant> {
        self.participants.iter().find(|p| p.alias == alias)
    }
}

/// Parses a sequence diagram. The grammar is line oriented:
///
/// ```text
/// participant "qubit_0" as q0 <<qubit>>
/// q0 -> q0 : h
/// group cx
///   q0 -> q1 : <<control>>
/// end
/// alt c0 == 1
///   q1 -> q1 : x
/// end
/// q0 -> c0 : measure
/// ```
pub fn parse_sequence_diagram(source: &str) -> Result<SequenceModel, ParseError> {
    let mut p = SeqParser {
        cur: Cursor::new(tokenize(source)?),
        kinds: HashMap::new(),
        model: SequenceModel::default(),
    };
    let events = p.block(None)?;
    p.model.events = events;
    Ok(p.model)
}

struct SeqParser {
    cur: Cursor,
    kinds: HashMap<String, (ParticipantKind, (usize, usize))>,
    model: SequenceModel,
}

impl SeqParser {
    /// Parses statements until `end` (when `opener` is set) or end of input.
    fn block(&mut self, opener: Option<&Token>) -> Result<Vec<Event>, ParseError> {
        let mut events = Vec::new();
        loop {
            self.cur.skip_newlines();
            let tok = self.cur.peek().clone();
            match &tok.tok {
                Tok::Eof => {
                    return match opener {
                        Some(open) => Err(ParseError::new(
                            open.line,
                            open.column,
                            "`end` closing this fragment",
                            "end of input",
                        )),
                        None => Ok(events),
                    };
                }
                Tok::Directive(_) => {
                    self.cur.bump();
                    self.cur.expect_line_end()?;
                }
                Tok::Ident(w) if w == "end" => {
                    if opener.is_none() {
                        return Err(self.cur.error("a participant, message or fragment"));
                    }
                    self.cur.bump();
                    self.cur.expect_line_end()?;
                    return Ok(events);
                }
                Tok::Ident(w) if w == "participant" => {
                    if opener.is_some() {
                        return Err(self.cur.error("a message or `end`"));
                    }
                    self.participant()?;
                }
                Tok::Ident(w) if w == "group" => events.push(self.group()?),
                Tok::Ident(w) if w == "alt" => events.push(self.alt()?),
                Tok::Ident(_) if matches!(self.cur.peek_at(1).tok, Tok::Arrow) => {
                    events.push(self.message()?)
                }
                _ => return Err(self.cur.error("a participant, message or fragment")),
            }
        }
    }

    fn participant(&mut self) -> Result<(), ParseError> {
        self.cur.bump();
        let (name, alias, alias_tok) = match self.cur.peek().tok.clone() {
            Tok::Str(name) => {
                self.cur.bump();
                if !self.cur.is_keyword("as") {
                    return Err(self.cur.error("`as`"));
                }
                self.cur.bump();
                let (alias, tok) = self.cur.expect_ident("participant alias")?;
                (name, alias, tok)
            }
            Tok::Ident(alias) => {
                let tok = self.cur.bump();
                (alias.clone(), alias, tok)
            }
            _ => return Err(self.cur.error("participant name")),
        };
        let pos = (alias_tok.line, alias_tok.column);
        if let Some((_, first)) = self.kinds.get(&alias) {
            return Err(ParseError::new(
                pos.0,
                pos.1,
                "a unique participant alias",
                format!("`{alias}` (already declared at {}:{})", first.0, first.1),
            ));
        }
        self.cur.expect(
            &Tok::StereoOpen,
            "stereotype `<<qubit>>` or `<<classical_bit>>`",
        )?;
        let kind = match &self.cur.peek().tok {
            Tok::Ident(s) if s == "qubit" => ParticipantKind::Qubit,
            Tok::Ident(s) if s == "classical_bit" => ParticipantKind::ClassicalBit,
            _ => return Err(self.cur.error("`qubit` or `classical_bit`")),
        };
        self.cur.bump();
        self.cur.expect(&Tok::StereoClose, "`>>`")?;
        self.cur.expect_line_end()?;
        self.kinds.insert(alias.clone(), (kind, pos));
        self.model
            .participants
            .push(Participant { name, alias, kind });
        Ok(())
    }

    fn declared_alias(&mut self, what: &str) -> Result<(String, ParticipantKind), ParseError> {
        let tok = self.cur.peek().clone();
        let (alias, _) = self.cur.expect_ident(what)?;
        match self.kinds.get(&alias) {
            Some((kind, _)) => Ok((alias, *kind)),
            None => Err(ParseError::new(
                tok.line,
                tok.column,
                "a declared participant alias",
                format!("`{alias}`"),
            )),
        }
    }

    fn params(&mut self) -> Result<Vec<f64>, ParseError> {
        let mut params = Vec::new();
        if !self.cur.eat(&Tok::LParen) {
            return Ok(params);
        }
        if self.cur.eat(&Tok::RParen) {
            return Ok(params);
        }
        loop {
            let negative = self.cur.eat(&Tok::Minus);
            if !negative {
                self.cur.eat(&Tok::Plus);
            }
            match self.cur.peek().tok {
                Tok::Number(v) => {
                    self.cur.bump();
                    params.push(if negative { -v } else { v });
                }
                _ => return Err(self.cur.error("real-valued gate parameter")),
            }
            if self.cur.eat(&Tok::RParen) {
                return Ok(params);
            }
            self.cur.expect(&Tok::Comma, "`,` or `)`")?;
        }
    }

    fn message(&mut self) -> Result<Event, ParseError> {
        let (sender, sender_kind) = self.declared_alias("sender alias")?;
        self.cur.expect(&Tok::Arrow, "`->`")?;
        let (receiver, receiver_kind) = self.declared_alias("receiver alias")?;
        self.cur
            .expect(&Tok::Colon, "`:` before the message name")?;
        let (name, _) = self.cur.expect_ident("gate name or `measure`")?;
        let params = self.params()?;
        self.cur.expect_line_end()?;
        Ok(
            if name == "measure"
                && params.is_empty()
                && sender_kind == ParticipantKind::Qubit
                && receiver_kind == ParticipantKind::ClassicalBit
            {
                Event::Measure {
                    qubit: sender,
                    clbit: receiver,
                }
            } else if sender == receiver {
                Event::SelfMessage {
                    qubit: sender,
                    name,
                    params,
                }
            } else {
                Event::Message {
                    sender,
                    receiver,
                    name,
                    params,
                }
            },
        )
    }

    fn group(&mut self) -> Result<Event, ParseError> {
        let open = self.cur.bump();
        let (name, _) = self.cur.expect_ident("gate name")?;
        let params = self.params()?;
        self.cur.expect_line_end()?;
        let mut messages = Vec::new();
        loop {
            self.cur.skip_newlines();
            if self.cur.is_keyword("end") {
                self.cur.bump();
                self.cur.expect_line_end()?;
                break;
            }
            if self.cur.at(&Tok::Eof) {
                return Err(ParseError::new(
                    open.line,
                    open.column,
                    "`end` closing this group",
                    "end of input",
                ));
            }
            if !matches!(self.cur.peek().tok, Tok::Ident(_))
                || !matches!(self.cur.peek_at(1).tok, Tok::Arrow)
            {
                return Err(self.cur.error("a group message or `end`"));
            }
            let (sender, _) = self.declared_alias("sender alias")?;
            self.cur.bump();
            let (receiver, _) = self.declared_alias("receiver alias")?;
            let role = if self.cur.eat(&Tok::Colon) {
                self.cur
                    .expect(&Tok::StereoOpen, "`<<control>>` or `<<controlled>>`")?;
                let role = match &self.cur.peek().tok {
                    Tok::Ident(s) if s == "control" => Role::Control,
                    Tok::Ident(s) if s == "controlled" => Role::Controlled,
                    _ => return Err(self.cur.error("`control` or `controlled`")),
                };
                self.cur.bump();
                self.cur.expect(&Tok::StereoClose, "`>>`")?;
                Some(role)
            } else {
                None
            };
            self.cur.expect_line_end()?;
            messages.push(GroupMessage {
                sender,
                receiver,
                role,
            });
        }
        if messages.is_empty() {
            return Err(ParseError::new(
                open.line,
                open.column,
                "at least one message inside the group",
                "empty group",
            ));
        }
        Ok(Event::Group {
            name,
            params,
            messages,
        })
    }

    fn alt(&mut self) -> Result<Event, ParseError> {
        let open = self.cur.bump();
        let cond_tok = self.cur.peek().clone();
        let (clbit, kind) = match &cond_tok.tok {
            Tok::Ident(alias) => match self.kinds.get(alias) {
                Some((kind, _)) => (alias.clone(), *kind),
                None => {
                    return Err(self.cur.error("condition `<classical bit> == 0|1`"));
                }
            },
            _ => return Err(self.cur.error("condition `<classical bit> == 0|1`")),
        };
        if kind != ParticipantKind::ClassicalBit {
            return Err(ParseError::new(
                cond_tok.line,
                cond_tok.column,
                "a classical bit in the condition",
                format!("qubit `{clbit}`"),
            ));
        }
        self.cur.bump();
        self.cur.expect(&Tok::EqEq, "`==` in condition")?;
        let value = match self.cur.peek().tok {
            Tok::Number(v) if v == 0.0 || v == 1.0 => v as u8,
            _ => return Err(self.cur.error("`0` or `1` in condition")),
        };
        self.cur.bump();
        self.cur.expect_line_end()?;
        let body = self.block(Some(&open))?;
        Ok(Event::Alt { clbit, value, body })
    }
}
