use std::fmt;

use serde::{Deserialize, Serialize};

/// Vertex label.
///
/// Products keep the factor labels as pairs, unions tag the side a vertex
/// came from, and type graphs label vertices by their sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "LabelRepr", into = "LabelRepr")]
pub enum Label {
    Index(usize),
    Name(String),
    Seq(Vec<u32>),
    Pair(Box<Label>, Box<Label>),
    Left(Box<Label>),
    Right(Box<Label>),
}

impl Label {
    pub fn pair(a: Label, b: Label) -> Self {
        Label::Pair(Box::new(a), Box::new(b))
    }

    pub fn left(a: Label) -> Self {
        Label::Left(Box::new(a))
    }

    pub fn right(a: Label) -> Self {
        Label::Right(Box::new(a))
    }

    pub fn as_seq(&self) -> Option<&[u32]> {
        match self {
            Label::Seq(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Index(i) => write!(f, "{i}"),
            Label::Name(s) => write!(f, "{s}"),
            Label::Seq(s) => {
                write!(f, "[")?;
                for (i, x) in s.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            Label::Pair(a, b) => write!(f, "({a},{b})"),
            Label::Left(a) => write!(f, "L{a}"),
            Label::Right(a) => write!(f, "R{a}"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum LabelRepr {
    Index(usize),
    Name(String),
    Compound(Compound),
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Compound {
    Seq(Vec<u32>),
    Pair(Label, Label),
    Left(Label),
    Right(Label),
}

impl From<LabelRepr> for Label {
    fn from(r: LabelRepr) -> Self {
        match r {
            LabelRepr::Index(i) => Label::Index(i),
            LabelRepr::Name(s) => Label::Name(s),
            LabelRepr::Compound(Compound::Seq(s)) => Label::Seq(s),
            LabelRepr::Compound(Compound::Pair(a, b)) => Label::pair(a, b),
            LabelRepr::Compound(Compound::Left(a)) => Label::left(a),
            LabelRepr::Compound(Compound::Right(a)) => Label::right(a),
        }
    }
}

impl From<Label> for LabelRepr {
    fn from(l: Label) -> Self {
        match l {
            Label::Index(i) => LabelRepr::Index(i),
            Label::Name(s) => LabelRepr::Name(s),
            Label::Seq(s) => LabelRepr::Compound(Compound::Seq(s)),
            Label::Pair(a, b) => LabelRepr::Compound(Compound::Pair(*a, *b)),
            Label::Left(a) => LabelRepr::Compound(Compound::Left(*a)),
            Label::Right(a) => LabelRepr::Compound(Compound::Right(*a)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structured_labels_round_trip_through_json() {
        let l = Label::pair(Label::left(Label::Index(3)), Label::Seq(vec![0, 2, 1]));
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"pair":[{"left":3},{"seq":[0,2,1]}]}"#);
        let back: Label = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
        assert_eq!(l.to_string(), "(L3,[0,2,1])");
    }
}
