//! Known gaps between stated claims and what the checks observe, each with
//! a replayable witness.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub id: &'static str,
    /// Claims the finding concerns.
    pub claims: &'static [&'static str],
    pub summary: &'static str,
    /// graph6 string or family spec reproducing the finding.
    pub witness: &'static str,
    /// Parameters under which the witness shows the finding.
    pub params: &'static str,
}

const FINDINGS: &[Finding] = &[
    Finding {
        id: "join-sigma-sign",
        claims: &["cor-3.3-printed"],
        summary: "sigma(u v G) - sigma(G) - Z_2(G) equals n(n-1)^2 - 4m(n-1); with +Z_2 the identity \
                  fails whenever G has an edge. On P_3 the two sides are 8 and -4.",
        witness: "Bg",
        params: "",
    },
    Finding {
        id: "pendant-next-to-degree-two",
        claims: &["thm-3.8", "cor-3.4"],
        summary: "When the pendant vertex's neighbour has degree 2, hanging a path at it leaves every \
                  edge difference sum unchanged, so the strict changes for p != 1 and for sigma do not occur.",
        witness: "Ch",
        params: "anchor=0, t=1, p=2",
    },
    Finding {
        id: "constant-difference-equality",
        claims: &["thm-3.1", "cor-3.1", "thm-3.2"],
        summary: "Equality in the power-mean and Cauchy bounds holds whenever every edge has the same \
                  |d(u) - d(v)|, which includes trees that are neither regular nor semiregular; the \
                  conjugate-exponent product is tight whenever all nonzero differences agree.",
        witness: "spider:2,2,2",
        params: "p=2, q=1",
    },
    Finding {
        id: "sigma-bound-equality",
        claims: &["thm-3.5"],
        summary: "A_2 = sqrt(F - 2 M2) on every graph, and regular graphs give 0 = 0 for every p, so \
                  equality is not confined to graphs with a single discrepant edge.",
        witness: "Bw",
        params: "p=3",
    },
    Finding {
        id: "second-minimum-labels",
        claims: &["thm-4.2"],
        summary: "Exhaustive scans give second-minimum 6 attained by the Delta = 3 spiders with all legs \
                  at least 2 for p > 1, and 2^(p+1) + 2 attained by the broom spider(1,1,n-3) for \
                  p < 1; the stated equality cases assign these two shapes the other way round.",
        witness: "spider:1,1,7",
        params: "p=0.5",
    },
    Finding {
        id: "bethe-product-range",
        claims: &["thm-5.1-printed"],
        summary: "Running the level product up to i includes the factor d_k - 1 = 0 in the leaf term and \
                  counts every other level once too often; the tree's sum needs the product up to i - 1.",
        witness: "bethe:k=3,d=2",
        params: "p=1",
    },
    Finding {
        id: "bethe-two-levels",
        claims: &["cor-5.1"],
        summary: "d + d^(p+k-1) needs an inner level; B_(2,d) is the star K_(1,d) with sum d(d-1)^p.",
        witness: "bethe:k=2,d=3",
        params: "p=1",
    },
    Finding {
        id: "tree-bounds-small-order",
        claims: &["thm-4.1-lower", "thm-4.1-upper"],
        summary: "For n <= 2 the lower bound fails (A_p(P_2) = 0); at n = 3 the path and the star \
                  coincide and attain both bounds.",
        witness: "A_",
        params: "p=1",
    },
];

pub fn findings() -> &'static [Finding] {
    FINDINGS
}

pub fn findings_for(claim_id: &str) -> impl Iterator<Item = &'static Finding> + '_ {
    FINDINGS.iter().filter(move |f| f.claims.contains(&claim_id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6;
    use crate::verify::{check, ClaimId, Instance, Params, Status};

    fn instance(witness: &str) -> Instance {
        match graph6::decode(witness) {
            Ok(g) => Instance::Graph(g),
            Err(_) => Instance::Family(witness.parse().unwrap()),
        }
    }

    #[test]
    fn every_finding_names_registered_claims_and_a_valid_witness() {
        for f in findings() {
            for c in f.claims {
                c.parse::<ClaimId>().unwrap();
            }
            instance(f.witness).graph().unwrap();
        }
        assert_eq!(findings_for("thm-4.2").count(), 1);
    }

    #[test]
    fn witnesses_reproduce() {
        let printed = check("cor-3.3-printed", &instance("Bg"), &Params::default()).unwrap();
        assert_eq!(printed.status, Status::Violated);
        let params = Params {
            p: Some(2.0),
            t: Some(1),
            anchor: Some(0),
            ..Params::default()
        };
        assert_eq!(check("thm-3.8", &instance("Ch"), &params).unwrap().status, Status::Violated);
        let bethe = check("thm-5.1-printed", &instance("bethe:k=3,d=2"), &Params::with_p(1.0)).unwrap();
        assert_eq!(bethe.status, Status::Violated);
        let two = check("cor-5.1", &instance("bethe:k=2,d=3"), &Params::with_p(1.0)).unwrap();
        assert_eq!(two.status, Status::PreconditionSkipped);
        let triangle = check("thm-3.5", &instance("Bw"), &Params::with_p(3.0)).unwrap();
        assert!(triangle.classifier_disagrees());
    }
}
