#pragma once

#include <string>
#include <vector>

namespace jacobiflow::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst observed value of the checked quantity
  double threshold = 0.0;  // bound the measured value is held to
  double seconds = 0.0;
  std::string detail;
};

struct NamedGerm {
  std::string name;
  std::string expr;
  int vars;
};

/// A_k = x^k (k = 1..6), D_k = x^2 y + y^{k-1} (k = 4..6), E6, E7, E8.
std::vector<NamedGerm> simple_singularities();

CriterionResult simple_singularity_membership();
CriterionResult euler_identity();
CriterionResult stable_equivalence();
CriterionResult shift_group_laws();
CriterionResult local_lift();
CriterionResult global_gluing();
CriterionResult interpolating_diffeo();
CriterionResult section_right_inverse();
CriterionResult parity_law();
CriterionResult obstruction_certificate();
CriterionResult flow_factor_probe();

std::vector<CriterionResult> run_all();

/// "[PASS] 3 name: measured ... (detail)".
std::string format_line(const CriterionResult& r);

}  // namespace jacobiflow::verify
