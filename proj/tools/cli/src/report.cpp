#include "ktcy_cli/report.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ktcy::cli {

OrderedJson diagnostics_json(const Diagnostics& d) {
  return {{"residual_sup", d.residual_sup}, {"residual_l2", d.residual_l2},
          {"min_nu", d.min_nu},             {"min_A", d.min_A},
          {"sup_u", d.sup_u},               {"lemma22_margin", d.lemma22_margin},
          {"key_identity_sup", d.key_identity_sup}, {"alpha", d.alpha},
          {"beta", d.beta}};
}

OrderedJson state_json(const ContinuityState& s) {
  OrderedJson j;
  j["t"] = s.t;
  j["c_t"] = s.c_t;
  j["converged"] = s.converged;
  j["newton_iterations"] = s.diagnostics.newton_iterations;
  int krylov = 0;
  auto steps = OrderedJson::array();
  for (const auto& st : s.diagnostics.steps) {
    krylov += st.krylov_iterations;
    steps.push_back({{"residual_before", st.residual_before},
                     {"residual_after", st.residual_after},
                     {"step_length", st.step_length},
                     {"krylov_iterations", st.krylov_iterations},
                     {"linear_rel_residual", st.linear_rel_residual},
                     {"rhs_mean_defect", st.rhs_mean_defect}});
  }
  j["krylov_iterations"] = krylov;
  j["residual_history"] = s.diagnostics.residual_history;
  j["max_rhs_mean_defect"] = s.diagnostics.max_rhs_mean_defect;
  j.update(diagnostics_json(s.diagnostics));
  j["steps"] = steps;
  return j;
}

OrderedJson final_json(const ContinuityState& s) {
  OrderedJson j = diagnostics_json(s.diagnostics);
  j["c_t"] = s.c_t;
  j["t"] = s.t;
  j["phi_sup"] = s.phi.phi().sup_norm();
  return j;
}

bool all_finite(const OrderedJson& j) {
  if (j.is_number_float()) return std::isfinite(j.get<double>());
  if (j.is_structured())
    for (const auto& v : j)
      if (!all_finite(v)) return false;
  return true;
}

void write_json(const std::filesystem::path& path, const OrderedJson& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace ktcy::cli
