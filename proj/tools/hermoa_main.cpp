#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hermoa/design.hpp"
#include "hermoa/field.hpp"
#include "hermoa/geometry.hpp"
#include "hermoa/oa.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Options {
  unsigned q = 0;
  unsigned n = 2;
  unsigned p = 0;
  unsigned m = 0;
  std::string variant = "A0";
  std::string input;
  std::string output;
  int threads = 0;
  bool verbose = false;
};

hermoa::HermitianGeometry make_geometry(const Options& opt, hermoa::Field& field) {
  field = hermoa::Field::make(opt.p, 2 * opt.m);  // GF(q^2)
  return hermoa::HermitianGeometry(field, opt.n);
}

json violations_json(const std::vector<hermoa::Violation>& vs) {
  json arr = json::array();
  for (const auto& v : vs) {
    arr.push_back({{"rows", v.rows},
                   {"symbols", std::vector<unsigned>(v.symbols.begin(), v.symbols.end())},
                   {"count", v.count},
                   {"expected", v.expected}});
    if (arr.size() >= 16) break;
  }
  return arr;
}

json oa_report_json(const hermoa::OrthogonalArray& a, const hermoa::VerificationReport& r) {
  json j;
  j["N"] = a.runs;
  j["k"] = a.k;
  j["q"] = a.q;
  j["achieved_strength"] = r.achieved_strength;
  j["index_at"] = json::object();
  for (const auto& [t, mu] : r.index_at) j["index_at"][std::to_string(t)] = mu;
  j["nonuniform_at"] = r.nonuniform_at;
  j["simple"] = r.columns.simple;
  j["multiplicity_histogram"] = json::object();
  for (const auto& [mult, cnt] : r.columns.multiplicity_histogram)
    j["multiplicity_histogram"][std::to_string(mult)] = cnt;
  if (!r.violations.empty()) j["violations"] = violations_json(r.violations);
  return j;
}

int cmd_field_table(const Options& opt, unsigned p, unsigned e) {
  hermoa::Field f = hermoa::Field::make(p, e);
  (void)opt;
  std::cout << "GF(" << f.size() << ") = GF(" << p << ")[x]/(";
  const auto& m = f.modulus();
  bool first = true;
  for (unsigned i = e + 1; i-- > 0;) {
    if (m[i] == 0) continue;
    if (!first) std::cout << "+";
    first = false;
    if (i == 0 || m[i] != 1) std::cout << m[i];
    if (i >= 1) {
      std::cout << "x";
      if (i > 1) std::cout << "^" << i;
    }
  }
  std::cout << ")\n\nadd:\n";
  for (hermoa::Fe a = 0; a < f.size(); ++a) {
    for (hermoa::Fe b = 0; b < f.size(); ++b)
      std::cout << (b ? " " : "") << f.to_string(f.add(a, b));
    std::cout << "\n";
  }
  std::cout << "\nmul:\n";
  for (hermoa::Fe a = 0; a < f.size(); ++a) {
    for (hermoa::Fe b = 0; b < f.size(); ++b)
      std::cout << (b ? " " : "") << f.to_string(f.mul(a, b));
    std::cout << "\n";
  }
  if (e % 2 == 0) {
    auto td = f.trace_data();
    std::cout << "\nT0:";
    for (hermoa::Fe t : td.t0) std::cout << " " << f.to_string(t);
    std::cout << "\nC:";
    for (hermoa::Fe c : td.coset_reps) std::cout << " " << f.to_string(c);
    std::cout << "\n";
  }
  return kOk;
}

int cmd_gen_oa(const Options& opt) {
  hermoa::Field field = hermoa::Field::make(2, 2);
  hermoa::HermitianGeometry geo = make_geometry(opt, field);
  hermoa::OrthogonalArray a =
      opt.variant == "A" ? hermoa::build_A(geo) : hermoa::build_A0(geo);
  if (!opt.output.empty()) hermoa::export_oa_file(a, opt.output);

  hermoa::VerificationReport r = hermoa::verify(a, 2, opt.threads);
  json j = oa_report_json(a, r);
  j["command"] = "gen-oa";
  j["variant"] = opt.variant;
  j["file"] = opt.output;
  bool ok = r.achieved_strength >= 2 && r.index_at.count(2) &&
            r.index_at.at(2) == a.index &&
            (opt.variant == "A" ? true : r.columns.simple);
  j["ok"] = ok;
  std::cout << j.dump() << "\n";
  if (opt.verbose) {
    std::ostringstream table;
    hermoa::export_oa(a, table);
    std::cerr << table.str();
  }
  return ok ? kOk : kViolation;
}

int cmd_verify_oa(const Options& opt) {
  hermoa::OrthogonalArray a = hermoa::import_oa_file(opt.input);
  unsigned max_t = a.strength ? a.strength : 2;
  hermoa::VerificationReport r = hermoa::verify(a, max_t, opt.threads);
  json j = oa_report_json(a, r);
  j["command"] = "verify-oa";
  j["file"] = opt.input;
  bool ok = r.achieved_strength >= a.strength &&
            (a.strength == 0 || r.index_at.at(a.strength) == a.index);
  j["ok"] = ok;
  std::cout << j.dump() << "\n";
  return ok ? kOk : kViolation;
}

json design_reports_json(const hermoa::IncidenceStructure& s,
                         const hermoa::TwoDesignReport& d2,
                         const hermoa::AffineReport& aff) {
  json j;
  j["v"] = d2.v;
  j["b"] = d2.b;
  j["block_size"] = d2.block_size;
  j["lambda"] = d2.lambda;
  j["replication"] = d2.replication;
  j["is_2design"] = d2.ok;
  j["is_affine"] = aff.ok;
  j["parallel_class_count"] = aff.parallel_classes.size();
  j["small_intersection"] = aff.small_intersection;
  json viol = json::array();
  for (const auto& m : d2.violations) viol.push_back(m);
  for (const auto& m : aff.violations) viol.push_back(m);
  if (!viol.empty()) j["violations"] = viol;
  (void)s;
  return j;
}

int cmd_gen_design(const Options& opt) {
  hermoa::Field field = hermoa::Field::make(2, 2);
  hermoa::HermitianGeometry geo = make_geometry(opt, field);
  hermoa::IncidenceStructure s = hermoa::build_design(geo);
  if (!opt.output.empty()) {
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + opt.output + " for writing");
    out << hermoa::design_to_json(s, geo);
  }
  auto d2 = hermoa::verify_2design(s, opt.threads);
  auto aff = hermoa::verify_affine(s);
  json j = design_reports_json(s, d2, aff);
  j["command"] = "gen-design";
  j["q"] = opt.q;
  j["n"] = opt.n;
  j["file"] = opt.output;
  bool ok = d2.ok && aff.ok;
  j["ok"] = ok;
  std::cout << j.dump() << "\n";
  if (opt.verbose)
    std::cerr << "2-(" << d2.v << "," << d2.block_size << "," << d2.lambda
              << ") design, b=" << d2.b << ", r=" << d2.replication << "\n";
  return ok ? kOk : kViolation;
}

int cmd_verify_design(const Options& opt) {
  std::ifstream in(opt.input, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + opt.input);
  std::stringstream buf;
  buf << in.rdbuf();
  hermoa::IncidenceStructure s = hermoa::design_from_json(buf.str());
  auto d2 = hermoa::verify_2design(s, opt.threads);
  auto aff = hermoa::verify_affine(s);
  json j = design_reports_json(s, d2, aff);
  j["command"] = "verify-design";
  j["file"] = opt.input;
  bool ok = d2.ok && aff.ok;
  j["ok"] = ok;
  std::cout << j.dump() << "\n";
  return ok ? kOk : kViolation;
}

int cmd_census(const Options& opt) {
  hermoa::Field field = hermoa::Field::make(2, 2);
  hermoa::HermitianGeometry geo = make_geometry(opt, field);
  hermoa::VarietyCensus census = geo.variety_census();
  json j;
  j["command"] = "census";
  j["q"] = opt.q;
  j["n"] = opt.n;
  j["total_points"] = census.total_points;
  j["affine_points"] = census.affine_points;
  j["exhaustive_lines"] = census.exhaustive_lines;
  j["line_meet_histogram"] = json::object();
  for (const auto& [size, cnt] : census.line_meet_histogram)
    j["line_meet_histogram"][std::to_string(size)] = cnt;
  std::uint64_t expected_affine = 1;
  for (unsigned i = 0; i < 2 * opt.n - 1; ++i) expected_affine *= opt.q;
  bool ok = census.affine_points == expected_affine && census.meets_allowed(opt.q);
  j["ok"] = ok;
  std::cout << j.dump() << "\n";
  return ok ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian-variety orthogonal arrays and their affine design"};
  app.require_subcommand(1);

  Options opt;
  unsigned ft_p = 0, ft_e = 0;

  auto add_qn = [&](CLI::App* cmd) {
    cmd->add_option("--q", opt.q, "number of symbols (prime power)")->required();
    cmd->add_option("--n", opt.n, "dimension parameter, n >= 2");
    cmd->add_option("--threads", opt.threads, "verifier worker count (0 = hardware)");
    cmd->add_flag("--verbose", opt.verbose, "human-readable tables on stderr");
  };

  CLI::App* field_table = app.add_subcommand("field-table", "print GF(p^e) tables");
  field_table->add_option("p", ft_p, "prime characteristic")->required();
  field_table->add_option("e", ft_e, "extension degree")->required();

  CLI::App* gen_oa = app.add_subcommand("gen-oa", "build and verify an array");
  add_qn(gen_oa);
  gen_oa->add_option("--variant", opt.variant, "A (full) or A0 (simple)")
      ->check(CLI::IsMember({"A", "A0"}));
  gen_oa->add_option("--output,-o", opt.output, "output array file");

  CLI::App* verify_oa = app.add_subcommand("verify-oa", "verify an array file");
  verify_oa->add_option("--input,-i", opt.input, "array file")->required();
  verify_oa->add_option("--threads", opt.threads, "verifier worker count");

  CLI::App* gen_design = app.add_subcommand("gen-design", "build and verify the design");
  add_qn(gen_design);
  gen_design->add_option("--output,-o", opt.output, "output design JSON");

  CLI::App* verify_design = app.add_subcommand("verify-design", "verify a design JSON");
  verify_design->add_option("--input,-i", opt.input, "design JSON file")->required();
  verify_design->add_option("--threads", opt.threads, "verifier worker count");

  CLI::App* census = app.add_subcommand("census", "enumerate the canonical variety");
  add_qn(census);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kUsage;
  }

  try {
    if (field_table->parsed()) return cmd_field_table(opt, ft_p, ft_e);

    if (gen_oa->parsed() || gen_design->parsed() || census->parsed()) {
      if (!hermoa::factor_prime_power(opt.q, opt.p, opt.m))
        throw std::invalid_argument("q must be a prime power");
      if (opt.n < 2) throw std::invalid_argument("n must be at least 2");
    }
    if (gen_oa->parsed()) return cmd_gen_oa(opt);
    if (verify_oa->parsed()) return cmd_verify_oa(opt);
    if (gen_design->parsed()) return cmd_gen_design(opt);
    if (verify_design->parsed()) return cmd_verify_design(opt);
    if (census->parsed()) return cmd_census(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
  return kUsage;
}
