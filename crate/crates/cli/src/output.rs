use std::process::ExitCode;

use serde_json::{json, Value};

use nilrev::campaign::CampaignReport;
use nilrev::certificate::{CertificateDocument, WitnessDocument};
use nilrev::jordan::JordanData;
use nilrev::oracle::SearchReport;
use nilrev::reverser::InductionTrace;
use nilrev::{Error, Matrix, Scalar};

pub enum Failure {
    /// Bad flags, unreadable files: exit 1.
    Usage(String),
    Core(Error),
    /// A report was already printed: exit 2.
    Silent,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<nilrev::ParseError> for Failure {
    fn from(e: nilrev::ParseError) -> Self {
        Failure::Core(e.into())
    }
}

pub struct Out {
    pub json: bool,
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

pub fn edge_list(edges: &[(usize, usize)]) -> String {
    edges.iter().map(|(i, j)| format!("({i},{j})")).collect::<Vec<_>>().join(",")
}

fn join<S: Scalar>(v: &[S]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl Out {
    pub fn fail(&self, f: Failure) -> ExitCode {
        match f {
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
            Failure::Core(e @ (Error::Parse(_) | Error::RingMismatch { .. } | Error::MalformedCertificate(_))) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
            Failure::Core(e) => {
                self.report(&format!("precondition failed: {e}"), json!({"status": "error", "error": e.to_string()}));
                ExitCode::from(2)
            }
            Failure::Silent => ExitCode::from(2),
        }
    }

    pub fn report(&self, plain: &str, value: Value) {
        if self.json {
            print_json(&value);
        } else {
            println!("{plain}");
        }
    }

    pub fn matrix_result<S: Scalar>(&self, m: &Matrix<S>) {
        self.report(&m.to_text(), json!({"ring": S::RING, "n": m.n(), "result": m.to_text()}));
    }

    pub fn certificate(&self, doc: &CertificateDocument) {
        if self.json {
            println!("{}", doc.to_json());
        } else {
            println!("reverser found by {} ({}, {} level)", doc.produced_by.as_str(), doc.group, doc.level);
            println!("g = {}", doc.g);
            println!("involution: {}", doc.involution);
            println!("verified: {}", doc.verified);
        }
    }

    pub fn trace<S: Scalar>(&self, trace: &InductionTrace<S>) {
        if self.json {
            let steps: Vec<Value> = trace
                .steps
                .iter()
                .map(|s| json!({"k": s.k, "epsilon": s.epsilon.as_i8(), "a": join(&s.a), "b": join(&s.b), "g": s.g.to_text()}))
                .collect();
            print_json(&json!({ "induction": steps }));
        } else {
            for s in &trace.steps {
                println!("k={} eps={} a=({}) b=({}) g_k = {}", s.k, s.epsilon.as_i8(), join(&s.a), join(&s.b), s.g);
            }
        }
    }

    pub fn witness(&self, w: &WitnessDocument) {
        if self.json {
            print_json(&json!({"status": "infeasible", "method": "jordan_witness", "witness": w}));
            return;
        }
        println!("no reverser in the unipotent group: the input is nonzero");
        println!("Jordan type: {}", w.partition);
        println!("ordered basis: {}", w.ordered_basis.join(", "));
        println!("reverser of J in that basis: {}", w.reverser_in_basis);
        println!("block 1 = {} (unipotent: {})", w.first_block, w.first_block_unipotent);
        println!("block {} = {} (unipotent: {})", w.paired_index, w.paired_block, w.paired_block_unipotent);
        match w.oracle_infeasible {
            Some(_) => println!("oracle: INFEASIBLE"),
            None => println!("oracle: skipped (n above the dimension bound)"),
        }
    }

    pub fn jordan<S: Scalar>(&self, d: &JordanData<S>) {
        if self.json {
            print_json(&json!({
                "ring": S::RING,
                "partition": d.partition.to_string(),
                "chain_lengths": d.chain_lengths(),
                "ordered_basis": d.ordered_basis_labels(),
                "beta": d.beta.to_text(),
                "jordan_form": d.jordan_form.as_matrix().to_text(),
            }));
        } else {
            println!("{}", d.partition);
            println!("ordered basis: {}", d.ordered_basis_labels().join(", "));
            println!("beta = {}", d.beta);
        }
    }

    pub fn search(&self, r: &SearchReport) {
        if self.json {
            print_json(&serde_json::to_value(r).expect("reports serialize"));
            return;
        }
        println!("search ring={} n={} budget={}", r.ring, r.n, r.budget);
        println!("real: {}  not real: {}", r.feasible, r.infeasible);
        for c in &r.candidates {
            println!("candidate non-real element: {c}");
        }
    }

    pub fn campaign(&self, r: &CampaignReport) {
        if self.json {
            println!("{}", r.to_json());
        } else {
            print!("{}", r.to_plain());
        }
    }
}
