#include "heckelab/serialize.hpp"

#include <stdexcept>

#include "heckelab/version.hpp"

namespace heckelab {

namespace {

ojson flat_matrix(const FpMatrix& m) {
  ojson rows = ojson::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson coord_vectors(const std::vector<std::vector<uint32_t>>& vs) {
  ojson out = ojson::array();
  for (const auto& v : vs) out.push_back(v);
  return out;
}

ojson rational_json(const Rational& r) { return ojson{{"num", r.num}, {"den", r.den}}; }

std::string format_rational(int64_t num, int64_t den) {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace

std::string group_kind_name(GroupKind kind) {
  return kind == GroupKind::Gamma0 ? "gamma0" : "gamma1";
}

GroupKind parse_group_kind(const std::string& name) {
  if (name == "gamma0") return GroupKind::Gamma0;
  if (name == "gamma1") return GroupKind::Gamma1;
  throw std::invalid_argument("unknown group kind: " + name);
}

ojson pair_payload_json(const ModularSymbolSpace& sp, const HeckeAlgebra& alg,
                        const std::vector<LocalFactor>& factors, const ScanResult& res) {
  const auto& inv = sp.invariants();
  ojson payload;
  payload["schema_version"] = schema_version;
  payload["artifact_version"] = version_string;
  payload["p"] = sp.p();
  payload["level"] = sp.group().level;
  payload["group"] = group_kind_name(sp.group().kind);
  payload["sturm_bound"] = alg.sturm_bound;
  payload["heilbronn_family"] = heilbronn_family_id;

  payload["space"] = ojson{{"sl2_index", inv.sl2_index},
                           {"psl2_index", inv.psl2_index},
                           {"nu2", inv.nu2},
                           {"nu3", inv.nu3},
                           {"ncusps", inv.ncusps},
                           {"genus", inv.genus},
                           {"symbol_count", sp.symbol_count()},
                           {"quotient_dim", sp.quotient_dim()},
                           {"cuspidal_dim", sp.cuspidal_dim()},
                           {"h1_identification_guaranteed", sp.h1_identification_guaranteed()}};

  ojson gens = ojson::array();
  for (const auto& l : alg.labels) gens.push_back(l.str());
  ojson basis = ojson::array();
  for (const auto& b : alg.basis) basis.push_back(flat_matrix(b));
  payload["algebra"] = ojson{{"dim", alg.dim()},
                             {"dim_prime_to_p", alg.basis_prime_to_p.size()},
                             {"generators", std::move(gens)},
                             {"tp_index", alg.tp_index},
                             {"basis", std::move(basis)}};

  ojson jfactors = ojson::array();
  for (size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    ojson jf;
    jf["index"] = i;
    jf["block_dim"] = f.block_dim;
    jf["dim_local"] = f.dim_local;

    ojson eig = ojson::array();
    for (size_t g = 0; g < alg.labels.size(); ++g)
      eig.push_back(ojson{{"op", alg.labels[g].str()}, {"coords", f.residue.eigenvalues[g]}});
    jf["residue"] = ojson{{"modulus", f.residue.modulus.coeffs()},
                          {"degree", f.residue.degree},
                          {"eigenvalues", std::move(eig)}};

    ojson mps = ojson::array();
    for (size_t g = 0; g < alg.labels.size(); ++g)
      mps.push_back(
          ojson{{"op", alg.labels[g].str()}, {"coeffs", f.gen_irreducible[g].coeffs()}});
    jf["min_poly_irreducible"] = std::move(mps);

    jf["subspace"] = flat_matrix(f.subspace);
    ojson ab = ojson::array();
    for (const auto& b : f.algebra_basis) ab.push_back(flat_matrix(b));
    jf["algebra_basis"] = std::move(ab);

    jf["maximal_ideal"] = coord_vectors(f.maximal_ideal);
    jf["prime_to_p_sub"] = coord_vectors(f.prime_to_p_sub);
    jf["ideal_mp"] = coord_vectors(f.ideal_mp);
    jf["socle_m"] = coord_vectors(f.socle_m);
    jf["socle_mp"] = coord_vectors(f.socle_mp);

    jf["ordinary"] = f.ordinary;
    jf["gorenstein"] = f.gorenstein;
    jf["tp_socle_obstruction"] = f.tp_socle_obstruction;
    jf["weight_one_signature"] = f.weight_one_signature;
    jf["eisenstein_flag"] = f.eisenstein_flag;
    jf["r"] = ojson{{"num", f.r_num}, {"den", f.r_den}};
    jfactors.push_back(std::move(jf));
  }
  payload["factors"] = std::move(jfactors);

  ojson jreports = ojson::array();
  for (const auto& rep : res.reports) {
    ojson jr;
    jr["factor"] = rep.factor_index;
    jr["ordinary"] = rep.ordinary;
    jr["eisenstein_flag"] = rep.eisenstein_flag;
    jr["dim_fp_socle"] = rep.dim_fp_socle;
    jr["dim_fp_socle_p"] = rep.dim_fp_socle_p;
    jr["dim_F_socle"] = rep.dim_F_socle;
    jr["dim_F_socle_p"] = rep.dim_F_socle_p;
    jr["multiplicity_r"] =
        rep.multiplicity_r ? rational_json(*rep.multiplicity_r) : ojson(nullptr);
    jr["gorenstein"] = rep.gorenstein;
    jr["tp_scalar_on_socle_p"] =
        rep.tp_scalar_on_socle_p ? ojson(*rep.tp_scalar_on_socle_p) : ojson(nullptr);
    jr["weight_one_detected"] =
        rep.weight_one_detected ? ojson(*rep.weight_one_detected) : ojson(nullptr);
    jr["weight_one_signature"] = rep.weight_one_signature;
    ojson cons = ojson::array();
    for (const auto& c : rep.consistency)
      cons.push_back(ojson{{"claim", c.claim}, {"status", c.status}});
    jr["consistency"] = std::move(cons);
    jr["conclusions"] = rep.conclusions;
    jreports.push_back(std::move(jr));
  }
  payload["diagnostics"] =
      ojson{{"reports", std::move(jreports)}, {"violations", res.violation_count()}};
  return payload;
}

ojson scan_view_json(const ojson& payload) {
  ojson view = payload;
  if (view.contains("algebra")) view["algebra"].erase("basis");
  if (view.contains("factors"))
    for (auto& f : view["factors"]) {
      f.erase("subspace");
      f.erase("algebra_basis");
    }
  return view;
}

std::string csv_header() {
  return "p,N,group,factor,dimT,res_deg,dimF_socle,dimF_socle_p,r,ordinary,gorenstein,"
         "weight1_sig,eisenstein_flag\n";
}

void append_csv_rows(std::string& out, const ojson& payload) {
  const std::string prefix = std::to_string(payload.at("p").get<int64_t>()) + "," +
                             std::to_string(payload.at("level").get<int64_t>()) + "," +
                             payload.at("group").get<std::string>() + ",";
  const auto& factors = payload.at("factors");
  const auto& reports = payload.at("diagnostics").at("reports");
  for (size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    const auto& rep = reports[i];
    out += prefix;
    out += std::to_string(f.at("index").get<int64_t>()) + ",";
    out += std::to_string(f.at("dim_local").get<int64_t>()) + ",";
    out += std::to_string(f.at("residue").at("degree").get<int64_t>()) + ",";
    out += std::to_string(rep.at("dim_F_socle").get<int64_t>()) + ",";
    out += std::to_string(rep.at("dim_F_socle_p").get<int64_t>()) + ",";
    // The socle invariant r is always printed; whether it carries the
    // multiplicity interpretation is the report's multiplicity_r field.
    const auto& r = f.at("r");
    out += format_rational(r.at("num").get<int64_t>(), r.at("den").get<int64_t>()) + ",";
    out += f.at("ordinary").get<bool>() ? "1," : "0,";
    out += f.at("gorenstein").get<bool>() ? "1," : "0,";
    out += f.at("weight_one_signature").get<bool>() ? "1," : "0,";
    out += f.at("eisenstein_flag").get<bool>() ? "1\n" : "0\n";
  }
}

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace heckelab
