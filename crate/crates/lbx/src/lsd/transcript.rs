//! One-way communication transcripts.
//!
//! A transcript is an ordered list of messages, each a bit string sent by
//! one party. The reductions account Alice's and Bob's bits separately —
//! the whole point of the rebalancing chain is a bound on Alice's one-way
//! communication, so the accounting must be exact and auditable.
//!
//! The JSON form is an array of `{"party": "alice"|"bob", "bits": "0101"}`
//! objects, in message order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::BitStr;

/// Sender of one message.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    Alice,
    Bob,
}

/// One message of a transcript.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    pub party: Party,
    pub bits: BitStr,
}

/// An ordered list of messages with per-party bit accounting.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Transcript {
    messages: Vec<Message>,
}

impl Transcript {
    pub fn new() -> Self {
        Transcript::default()
    }

    pub fn push(&mut self, party: Party, bits: BitStr) {
        self.messages.push(Message { party, bits });
    }

    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    /// Total bits sent by Alice.
    pub fn alice_bits(&self) -> u64 {
        self.party_bits(Party::Alice)
    }

    /// Total bits sent by Bob.
    pub fn bob_bits(&self) -> u64 {
        self.party_bits(Party::Bob)
    }

    pub fn total_bits(&self) -> u64 {
        self.messages.iter().map(|m| m.bits.len() as u64).sum()
    }

    fn party_bits(&self, party: Party) -> u64 {
        self.messages
            .iter()
            .filter(|m| m.party == party)
            .map(|m| m.bits.len() as u64)
            .sum()
    }

    /// Append another transcript's messages.
    pub fn extend(&mut self, other: &Transcript) {
        self.messages.extend(other.messages.iter().cloned());
    }

    pub fn to_json(&self) -> Result<String> {
        let wire: Vec<WireMessage> = self
            .messages
            .iter()
            .map(|m| WireMessage {
                party: match m.party {
                    Party::Alice => "alice".to_string(),
                    Party::Bob => "bob".to_string(),
                },
                bits: m.bits.to_string(),
            })
            .collect();
        Ok(serde_json::to_string(&wire)?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let wire: Vec<WireMessage> = serde_json::from_str(json)?;
        let mut t = Transcript::new();
        for m in wire {
            let party = match m.party.as_str() {
                "alice" => Party::Alice,
                "bob" => Party::Bob,
                other => return Err(Error::parse(format!("unknown party {other:?}"))),
            };
            t.push(party, m.bits.parse()?);
        }
        Ok(t)
    }
}

#[derive(Serialize, Deserialize)]
struct WireMessage {
    party: String,
    bits: String,
}
