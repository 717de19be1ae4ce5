#include "lieq/report.hpp"

#include <sstream>

namespace lieq {

using nlohmann::ordered_json;

std::string completeness_status_string(CompletenessStatus st) {
  switch (st) {
    case CompletenessStatus::Complete: return "Complete";
    case CompletenessStatus::LikelyIncomplete: return "LikelyIncomplete";
    case CompletenessStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

ordered_json basis_json(const LieBasis& b) {
  ordered_json arr = ordered_json::array();
  for (const auto& f : b.elements()) arr.push_back(f.str());
  return arr;
}

ordered_json structure_json(const StructureTensor& s) {
  ordered_json arr = ordered_json::array();
  for (int k = 0; k < s.dim; ++k)
    for (int i = 0; i < s.dim; ++i)
      for (int j = i + 1; j < s.dim; ++j)
        if (s.at(k, i, j) != 0)
          arr.push_back({{"k", k + 1}, {"i", i + 1}, {"j", j + 1},
                         {"value", to_string(s.at(k, i, j))}});
  return arr;
}

ordered_json matrix_json(const RatMat& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

ordered_json rank_json(const GenericRank& r) {
  return {{"rank", r.rank}, {"constant", r.constant}, {"samples", r.samples}};
}

}  // namespace

ordered_json report_json(const SystemSpec& s, const ClassificationReport& r) {
  ordered_json j;
  ordered_json sys;
  sys["vars"] = s.vars;
  ordered_json drift = ordered_json::array();
  for (const auto& p : s.drift.components()) drift.push_back(p.str());
  sys["drift"] = drift;
  ordered_json controls = ordered_json::array();
  for (const auto& g : s.controls) {
    ordered_json comps = ordered_json::array();
    for (const auto& p : g.components()) comps.push_back(p.str());
    controls.push_back(comps);
  }
  sys["controls"] = controls;
  j["system"] = sys;

  ordered_json dims;
  dims["state"] = s.dimension();
  dims["L"] = r.l ? ordered_json(r.l->dim()) : ordered_json(nullptr);
  dims["L0"] = r.l0 ? ordered_json(r.l0->dim()) : ordered_json(nullptr);
  j["dims"] = dims;

  if (r.l) j["basis_L"] = basis_json(*r.l);
  if (r.l0) j["basis_L0"] = basis_json(*r.l0);

  ordered_json sc;
  if (r.l && r.l->structure()) sc["L"] = structure_json(*r.l->structure());
  if (r.l0 && r.l0->structure()) sc["L0"] = structure_json(*r.l0->structure());
  j["structure_constants"] = sc;

  if (r.derivation) j["derivation"] = matrix_json(r.derivation->entries);

  ordered_json ranks;
  if (r.rank_l) ranks["L"] = rank_json(*r.rank_l);
  if (r.rank_l0) ranks["L0"] = rank_json(*r.rank_l0);
  j["ranks"] = ranks;

  ordered_json comp = ordered_json::array();
  for (std::size_t k = 0; k < r.completeness.size(); ++k) {
    const auto& c = r.completeness[k];
    ordered_json e;
    e["field"] = (k == 0) ? std::string("drift") : ("control_" + std::to_string(k));
    e["status"] = completeness_status_string(c.status);
    e["detail"] = c.detail;
    if (c.witness) e["witness"] = *c.witness;
    comp.push_back(e);
  }
  j["completeness"] = comp;

  if (r.catalog) {
    const AlgebraId& id = *r.catalog;
    j["catalog"] = {{"tag", to_string(id.tag)},
                    {"dim", id.dim},
                    {"derived_dim", id.derived_dim},
                    {"center_dim", id.center_dim},
                    {"killing_signature",
                     {id.killing_positive, id.killing_negative, id.killing_zero}}};
  }

  ordered_json dz;
  dz["found"] = r.drift_zero.has_value();
  if (r.drift_zero) {
    ordered_json pt = ordered_json::array();
    for (const auto& c : *r.drift_zero) pt.push_back(to_string(c));
    dz["point"] = pt;
    dz["verified"] = r.drift_zero_verified;
  }
  j["drift_zero"] = dz;

  j["verdict"] = verdict_string(r.verdict, r.reason);
  j["notes"] = r.notes;
  return j;
}

std::string report_text(const SystemSpec& s, const ClassificationReport& r) {
  std::ostringstream os;
  os << "system over (";
  for (std::size_t i = 0; i < s.vars.size(); ++i) os << (i ? ", " : "") << s.vars[i];
  os << ")\n";
  os << "  drift   f  = " << s.drift.str() << "\n";
  for (std::size_t k = 0; k < s.controls.size(); ++k)
    os << "  control g" << k + 1 << " = " << s.controls[k].str() << "\n";
  os << "\n";

  if (r.l) {
    os << "L  (dim " << r.l->dim() << "):\n";
    for (const auto& f : r.l->elements()) os << "    " << f.str() << "\n";
  }
  if (r.l0) {
    os << "L0 (dim " << r.l0->dim() << "):\n";
    for (const auto& f : r.l0->elements()) os << "    " << f.str() << "\n";
  }
  if (r.l0 && r.l0->structure()) {
    os << "nonzero structure constants of L0 (1-based):\n";
    const StructureTensor& t = *r.l0->structure();
    bool any = false;
    for (int k = 0; k < t.dim; ++k)
      for (int i = 0; i < t.dim; ++i)
        for (int j = i + 1; j < t.dim; ++j)
          if (t.at(k, i, j) != 0) {
            os << "    c^" << k + 1 << "_" << i + 1 << "," << j + 1 << " = "
               << to_string(t.at(k, i, j)) << "\n";
            any = true;
          }
    if (!any) os << "    (all zero)\n";
  }
  if (r.derivation) {
    os << "derivation -ad(f) on L0:\n";
    for (int i = 0; i < r.derivation->dim; ++i) {
      os << "   ";
      for (int k = 0; k < r.derivation->dim; ++k)
        os << " " << to_string(r.derivation->entries(i, k));
      os << "\n";
    }
  }
  if (r.rank_l)
    os << "generic rank of L:  " << r.rank_l->rank << " ("
       << (r.rank_l->constant ? "constant" : "NOT constant") << " over " << r.rank_l->samples
       << " points)\n";
  if (r.rank_l0)
    os << "generic rank of L0: " << r.rank_l0->rank << " ("
       << (r.rank_l0->constant ? "constant" : "NOT constant") << " over "
       << r.rank_l0->samples << " points)\n";
  os << "completeness:\n";
  for (std::size_t k = 0; k < r.completeness.size(); ++k) {
    const auto& c = r.completeness[k];
    os << "    " << (k == 0 ? "drift" : "control_" + std::to_string(k)) << ": "
       << completeness_status_string(c.status) << " (" << c.detail << ")";
    if (c.witness) {
      os << " witness (";
      for (std::size_t i = 0; i < c.witness->size(); ++i)
        os << (i ? ", " : "") << (*c.witness)[i];
      os << ")";
    }
    os << "\n";
  }
  if (r.catalog)
    os << "catalog tag of L0:  " << to_string(r.catalog->tag) << " (derived dim "
       << r.catalog->derived_dim << ", center dim " << r.catalog->center_dim << ")\n";
  if (r.drift_zero) {
    os << "drift zero: (";
    for (std::size_t i = 0; i < r.drift_zero->size(); ++i)
      os << (i ? ", " : "") << to_string((*r.drift_zero)[i]);
    os << ") [exactly verified]\n";
  } else {
    os << "drift zero: not found (non-verdict; a zero may still exist)\n";
  }
  os << "verdict: " << verdict_string(r.verdict, r.reason) << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

ordered_json demo_json(const EquivalenceDemoReport& r) {
  ordered_json j;
  j["max_deviation"] = r.max_deviation;
  j["tolerance"] = r.tol;
  j["pass"] = r.pass;
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"t", row.t},
                    {"sigma", {row.sigma_x, row.sigma_y}},
                    {"mapped", {row.mapped_x, row.mapped_y}},
                    {"deviation", row.deviation}});
  j["rows"] = rows;
  return j;
}

}  // namespace lieq
