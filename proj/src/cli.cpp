// Copyright 2026 The entpower Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "entpower/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "entpower/closedform.hpp"
#include "entpower/errors.hpp"
#include "entpower/protocol.hpp"
#include "entpower/unital.hpp"

namespace entpower::cli {

using Json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string in, out;
  std::uint64_t seed = 0;
  int restarts = 32;
  int ancillaA = 0, ancillaB = 0;
  bool noAncilla = false;
  double tol = 1e-8;
  bool json = false;
  // Subcommand specific.
  int d = 2;
  std::string family = "hw";
  int samples = 0;
  std::vector<std::string> genArgs;
  int rank = 0;
  int m = 0, n = 0, q = 0, p = 0;
  std::vector<double> thetas;
  int dA = 2, pRank = 1;
};

struct Context {
  explicit Context(const Flags& f) : flags(f) {}
  const Flags& flags;
  Json inputs = Json::object();
  Json provenance = Json::object();
  std::vector<std::string> warnings;
};

Json complex_array(const CVec& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back({v[k].real(), v[k].imag()});
  return a;
}

Json matrix_json(const CMat& M) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r)
    for (Eigen::Index c = 0; c < M.cols(); ++c) a.push_back({M(r, c).real(), M(r, c).imag()});
  return {{"rows", M.rows()}, {"cols", M.cols()}, {"entries", a}};
}

Json state_json(const PureState& s) { return {{"dims", s.dims}, {"amplitudes", complex_array(s.amplitudes)}}; }

// FNV-1a over the serialized matrix; stable across platforms and runs.
std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

PowerOptions power_options(const Flags& f) {
  PowerOptions o;
  o.restarts = f.restarts;
  o.seed = f.seed;
  if (f.ancillaA > 0) o.ancillaA = f.ancillaA;
  if (f.ancillaB > 0) o.ancillaB = f.ancillaB;
  o.noAncilla = f.noAncilla;
  return o;
}

BipartiteUnitary load(Context& ctx) {
  if (ctx.flags.in.empty()) throw UsageError("--in FILE is required for this subcommand");
  BipartiteUnitary U;
  try {
    U = read_matrix_file(ctx.flags.in, ctx.flags.tol);
  } catch (const Error& e) {
    throw MatrixError(e.what());
  }
  ctx.inputs["file"] = ctx.flags.in;
  ctx.inputs["dA"] = U.dA;
  ctx.inputs["dB"] = U.dB;
  ctx.inputs["digest"] = digest(write_matrix(U));
  return U;
}

void record_power_provenance(Context& ctx) {
  const Flags& f = ctx.flags;
  ctx.provenance["restarts"] = f.restarts;
  ctx.provenance["ancillaA"] = f.ancillaA > 0 ? Json(f.ancillaA) : Json(nullptr);
  ctx.provenance["ancillaB"] = f.ancillaB > 0 ? Json(f.ancillaB) : Json(nullptr);
  ctx.provenance["noAncilla"] = f.noAncilla;
}

Json estimate_json(const PowerEstimate& e) {
  Json bounds = Json::object();
  for (const auto& [name, v] : e.upperBounds) bounds[name] = v;
  Json w = Json::array();
  for (const auto& s : e.witness) w.push_back(state_json(s));
  return {{"quantity", to_string(e.quantity)}, {"value", e.value},         {"witness", w},
          {"upperBounds", bounds},             {"restartsUsed", e.restartsUsed}, {"bestRestart", e.bestRestart},
          {"evaluations", e.evaluations},      {"converged", e.converged},   {"ancillaA", e.ancillaA},
          {"ancillaB", e.ancillaB},            {"path", e.path}};
}

Json power(Context& ctx, Quantity q) {
  BipartiteUnitary U = load(ctx);
  record_power_provenance(ctx);
  PowerOptions o = power_options(ctx.flags);
  switch (q) {
    case Quantity::KE:
      return estimate_json(entangling_power(U, o));
    case Quantity::KEa:
      return estimate_json(assisted_entangling_power(U, o));
    case Quantity::Kd:
      return estimate_json(disentangling_power(U, o));
  }
  return {};
}

Json controlled_json(const std::optional<ControlledForm>& f) {
  if (!f) return nullptr;
  return {{"m", f->m}, {"computationalBasis", f->computationalBasis}, {"levelGroup", f->levelGroup}};
}

Json cmd_schmidt(Context& ctx) {
  BipartiteUnitary U = load(ctx);
  OperatorSchmidt s = operator_schmidt_decompose(U);
  Json a = Json::array(), b = Json::array();
  for (int j = 0; j < s.rank; ++j) {
    a.push_back(matrix_json(s.aOps[j]));
    b.push_back(matrix_json(s.bOps[j]));
  }
  return {{"rank", s.rank},
          {"coefficients", s.coefficients},
          {"schmidtStrength", schmidt_strength(s)},
          {"log2SchmidtRank", std::log2(double(s.rank))},
          {"aOps", a},
          {"bOps", b}};
}

Json cmd_bounds(Context& ctx) {
  BipartiteUnitary U = load(ctx);
  record_power_provenance(ctx);
  BoundsReport r = bounds_report(U, power_options(ctx.flags));
  ctx.warnings.push_back("conjecture probe kEa <= log2 Sch(U): conjecture, not asserted");
  return {{"kSch", r.kSch},
          {"kE", r.kE},
          {"kEa", r.kEa},
          {"log2SchmidtRank", r.log2SchmidtRank},
          {"log2m", r.log2m ? Json(*r.log2m) : Json(nullptr)},
          {"twoLog2dmin", r.twoLog2dmin},
          {"placeholders", r.placeholders},
          {"conjectureProbeHolds", r.conjectureProbeHolds},
          {"conjectureProbeMargin", r.conjectureProbeMargin},
          {"keEstimate", estimate_json(r.keEstimate)},
          {"keaEstimate", estimate_json(r.keaEstimate)}};
}

Json cmd_classify(Context& ctx) {
  BipartiteUnitary U = load(ctx);
  StructureReport r = classify(U);
  return {{"schmidtRank", r.schmidtRank},
          {"isPermutation", r.isPermutation},
          {"isComplexPermutation", r.isComplexPermutation},
          {"controlledInBasisA", controlled_json(r.controlledInBasisA)},
          {"controlledInBasisB", controlled_json(r.controlledInBasisB)},
          {"blockPattern", r.blockPattern}};
}

Json cmd_perm3(Context& ctx) {
  BipartiteUnitary U = load(ctx);
  record_power_provenance(ctx);
  Sr3PermVerdict v = classify_perm_sr3(U, power_options(ctx.flags));
  Json form = nullptr;
  if (v.formDetected)
    form = {{"m", v.formDetected->m},
            {"n", v.formDetected->n},
            {"q", v.formDetected->q},
            {"p", v.formDetected->p},
            {"side", v.formDetected->side == Side::A ? "A" : "B"}};
  return {{"value", v.value}, {"formDetected", form}, {"numericEstimate", v.numericEstimate}, {"agrees", v.agrees}};
}

Json cmd_cp3(Context& ctx) {
  BipartiteUnitary U = load(ctx);
  record_power_provenance(ctx);
  Cp3Value c = ke_cp3(U);
  PowerEstimate e = entangling_power(U, power_options(ctx.flags));
  if (c.discrepancyFlag)
    ctx.warnings.push_back(
        "cp3 discrepancy: the closed form uses a natural exponent while entropies are in bits; "
        "base2Stationary gives the bit-consistent stationary value");
  return {{"analytic", c.analytic},
          {"M", c.M},
          {"base2Stationary", c.base2Stationary},
          {"discrepancyFlag", c.discrepancyFlag},
          {"n", c.n},
          {"rowsSwapped", c.rowsSwapped},
          {"numeric", estimate_json(e)}};
}

Json cmd_gcnot(Context& ctx) {
  BipartiteUnitary U = load(ctx);
  GcnotVerdict g = gcnot_check(U);
  return {{"isGCNOT", g.isGCNOT}, {"witness", g.witness ? Json(*g.witness) : Json(nullptr)}, {"thetas", g.thetas}};
}

Json cmd_sr4(Context& ctx) {
  BipartiteUnitary U = load(ctx);
  Sr4Witness w = sr4_witness(U);
  return {{"alpha", state_json(w.alpha)},
          {"beta", state_json(w.beta)},
          {"i", w.i},
          {"j", w.j},
          {"zeroColumnCase", w.zeroColumnCase},
          {"outputEntanglement", w.outputEntanglement}};
}

Json cmd_clifford(Context& ctx) {
  BipartiteUnitary U = load(ctx);
  const double v = clifford_powers(U);
  return {{"quditDimension", infer_qudit_dimension(U.dA, U.dB)}, {"kE", v}, {"kEa", v}, {"kd", v}, {"kSch", v}};
}

Json cmd_symmetrize(Context& ctx) {
  BipartiteUnitary U = load(ctx);
  Symmetrized s = symmetrize_dax2_sr3(U);
  return {{"leftA", matrix_json(s.leftA)},
          {"leftB", matrix_json(s.leftB)},
          {"rightA", matrix_json(s.rightA)},
          {"rightB", matrix_json(s.rightB)},
          {"symmetricU", Json::parse(write_matrix(s.symmetricU))}};
}

Json cmd_protocol(Context& ctx) {
  BipartiteUnitary U = load(ctx);
  ProtocolCircuit c = build_protocol(U);
  Rng rng(ctx.flags.seed);
  PureState input = make_state({U.dA, U.dB}, random_state(U.dim(), rng));
  BranchTable t = enumerate_branches(c, input);
  ctx.warnings.push_back(
      "Kraus sets are {c_j A_j} and {c_j B_j} with (1/d)Tr A^dagger A = 1, i.e. {(c_j/sqrt dB) A_j} in unit-trace "
      "form; this satisfies completeness for any dA, dB");
  Json accepted = Json::array();
  for (const auto& b : t.rows)
    if (b.isSuccess) accepted.push_back({{"outcomes", b.outcomes}, {"probability", b.probability}});
  return {{"r", c.r},
          {"coefficients", c.schmidt.coefficients},
          {"input", state_json(input)},
          {"successProbability", t.success_probability()},
          {"totalProbability", t.total_probability()},
          {"branches", static_cast<int>(t.rows.size())},
          {"acceptedBranches", accepted},
          {"postUnitaryB", matrix_json(c.postUnitaryB)}};
}

Json cmd_unital(Context& ctx) {
  const Flags& f = ctx.flags;
  KrausFamily fam;
  if (f.family == "hw")
    fam = hw_family(f.d);
  else if (f.family == "diagonal")
    fam = diagonal_family(f.d);
  else
    throw UsageError("--family must be hw or diagonal");
  const int samples = f.samples > 0 ? f.samples : 64;
  ctx.inputs = {{"family", f.family}, {"d", f.d}};
  ctx.provenance["samples"] = samples;
  UnitalReport r = unital_equivalence_check(fam, samples, f.seed);
  ctx.warnings.push_back("productStateDeviation is reported as data; the block-diagonal form weights terms by |a_j|^2");
  return {{"gramDeviation", r.gramDeviation},
          {"allMatrixDeviation", r.allMatrixDeviation},
          {"pureStateDeviation", r.pureStateDeviation},
          {"productStateDeviation", r.productStateDeviation},
          {"gramHolds", r.gramHolds},
          {"pureStateHolds", r.pureStateHolds},
          {"confirmed", r.confirmed}};
}

Json cmd_sic(Context& ctx) {
  const Flags& f = ctx.flags;
  ctx.inputs = {{"d", f.d}};
  record_power_provenance(ctx);
  PureState phi = fiducial_search(f.d, f.seed);
  SicReport r = sic_entangling_check(f.d, phi, power_options(f));
  return {{"d", r.d},
          {"fiducial", state_json(r.fiducial)},
          {"residual", fiducial_residual(r.fiducial.amplitudes)},
          {"maxOverlapDeviation", r.maxOverlapDeviation},
          {"entanglingCheck", r.entanglingCheck},
          {"optimizerValue", r.optimizerValue}};
}

Json cmd_probe(Context& ctx) {
  const Flags& f = ctx.flags;
  const int samples = f.samples > 0 ? f.samples : 6;
  record_power_provenance(ctx);
  ctx.provenance["samples"] = samples;
  Rng rng(f.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
  Json sr2 = Json::array();
  for (int n : {4, 5})
    for (int s = 0; s < samples; ++s) {
      std::vector<double> th(n);
      for (auto& t : th) t = angle(rng);
      Sr2Value v = ke_sr2(th);
      PowerOptions o = power_options(f);
      o.seed = f.seed + static_cast<std::uint64_t>(sr2.size());
      double numeric = entangling_power(build(spec::ControlledPhases{2, 1, th}), o).value;
      sr2.push_back({{"thetas", th},
                     {"conjectured", v.pairwiseMax},
                     {"stationarity", v.value},
                     {"numeric", numeric},
                     {"label", "conjecture, not asserted"}});
    }
  Json chain = Json::array();
  const std::pair<int, int> shapes[] = {{2, 2}, {2, 3}, {3, 3}};
  for (auto [a, b] : shapes)
    for (int s = 0; s < samples; ++s) {
      auto U = random_instance(RandomKind::HaarLike, a, b, std::nullopt, f.seed + 1000 * a + 100 * b + s);
      BoundsReport r = bounds_report(U, power_options(f));
      chain.push_back({{"dA", a},
                       {"dB", b},
                       {"seed", f.seed + 1000 * a + 100 * b + s},
                       {"kE", r.kE},
                       {"kEa", r.kEa},
                       {"log2SchmidtRank", r.log2SchmidtRank},
                       {"holds", r.conjectureProbeHolds},
                       {"margin", r.conjectureProbeMargin},
                       {"label", "conjecture, not asserted"}});
    }
  return {{"sr2", sr2}, {"logSchmidtBound", chain}};
}

std::vector<int> ints(const std::vector<std::string>& v, std::size_t from) {
  std::vector<int> out;
  for (std::size_t k = from; k < v.size(); ++k) {
    try {
      out.push_back(std::stoi(v[k]));
    } catch (const std::exception&) {
      throw UsageError("expected an integer, got '" + v[k] + "'");
    }
  }
  return out;
}

BipartiteUnitary generate(const Flags& f) {
  if (f.genArgs.empty()) throw UsageError("gen needs a kind");
  const std::string& kind = f.genArgs[0];
  if (kind == "named") {
    if (f.genArgs.size() < 2) throw UsageError("gen named needs a gate name");
    std::vector<int> dims = ints(f.genArgs, 2);
    BipartiteUnitary U = build(spec::Named{f.genArgs[1], dims.empty() ? 2 : dims[0]});
    if (dims.size() == 2 && (dims[0] != U.dA || dims[1] != U.dB))
      throw PreconditionError("named gate has shape " + std::to_string(U.dA) + "x" + std::to_string(U.dB));
    return U;
  }
  if (kind == "ud1") {
    spec::Ud1 s;
    s.m = f.m, s.n = f.n, s.q = f.q, s.p = f.p;
    // Each V block is the cyclic shift on its block.
    s.V1 = shift_matrix(std::max(f.q, 1)), s.V2 = shift_matrix(std::max(f.p, 1));
    s.V3 = shift_matrix(std::max(f.n, 1)), s.V4 = shift_matrix(std::max(f.p, 1));
    return build(s);
  }
  if (kind == "phases") {
    if (f.thetas.empty()) throw UsageError("gen phases needs --thetas");
    return build(spec::ControlledPhases{f.dA, f.pRank, f.thetas});
  }
  static const std::map<std::string, RandomKind> kinds{{"haar", RandomKind::HaarLike},
                                                       {"permutation", RandomKind::Permutation},
                                                       {"complex-permutation", RandomKind::ComplexPermutation},
                                                       {"controlled", RandomKind::Controlled}};
  auto it = kinds.find(kind);
  if (it == kinds.end()) throw UsageError("unknown gen kind '" + kind + "'");
  std::vector<int> dims = ints(f.genArgs, 1);
  if (dims.size() != 2) throw UsageError("gen " + kind + " needs dA dB");
  std::optional<int> rank;
  if (f.rank > 0) rank = f.rank;
  return random_instance(it->second, dims[0], dims[1], rank, f.seed);
}

void render_text(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || (j.front().is_array() && j.size() <= 16 &&
                                                                      !j.front().empty() && j.front().front().is_array()))) {
    for (std::size_t k = 0; k < j.size(); ++k) render_text(j[k], prefix + "[" + std::to_string(k) + "]", os);
  } else {
    os << prefix << ": " << j.dump() << "\n";
  }
}

void emit(const Flags& f, const std::string& text, std::ostream& out) {
  if (f.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out);
  if (!file) throw UsageError("cannot open --out file " + f.out);
  file << text;
}

}  // namespace

BipartiteUnitary parse_matrix(const std::string& text, double tol) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw InvalidUnitary(std::string("matrix file is not valid JSON: ") + e.what());
  }
  try {
    const int dA = j.at("dA").get<int>(), dB = j.at("dB").get<int>();
    if (dA < 1 || dB < 1) throw InvalidUnitary("dA and dB must be positive");
    const auto& entries = j.at("entries");
    const int d = dA * dB;
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(d) * d)
      throw InvalidUnitary("matrix file needs (dA dB)^2 entries");
    CMat M(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        const auto& e = entries[static_cast<std::size_t>(r) * d + c];
        if (!e.is_array() || e.size() != 2) throw InvalidUnitary("each entry must be [re, im]");
        M(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
      }
    return make_unitary(dA, dB, M, tol);
  } catch (const Json::exception& e) {
    throw InvalidUnitary(std::string("malformed matrix file: ") + e.what());
  }
}

BipartiteUnitary read_matrix_file(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw InvalidUnitary("cannot read matrix file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str(), tol);
}

std::string write_matrix(const BipartiteUnitary& U) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < U.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < U.matrix.cols(); ++c) entries.push_back({U.matrix(r, c).real(), U.matrix(r, c).imag()});
  return Json{{"dA", U.dA}, {"dB", U.dB}, {"entries", entries}}.dump() + "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Entangling power analysis of bipartite unitaries", "entpower"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--in", f.in, "Matrix file (JSON)");
  app.add_option("--out", f.out, "Write the report here instead of stdout");
  app.add_option("--seed", f.seed, "Seed for restarts, samples and random inputs");
  app.add_option("--restarts", f.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  app.add_option("--ancilla-a", f.ancillaA, "Ancilla dimension on A")->check(CLI::PositiveNumber);
  app.add_option("--ancilla-b", f.ancillaB, "Ancilla dimension on B")->check(CLI::PositiveNumber);
  app.add_flag("--no-ancilla", f.noAncilla, "Product inputs without ancillas");
  app.add_option("--tol", f.tol, "Unitarity tolerance for matrix files")->check(CLI::PositiveNumber);
  app.add_flag("--json", f.json, "JSON report");

  using Handler = std::function<Json(Context&)>;
  std::map<std::string, Handler> handlers{
      {"schmidt", cmd_schmidt},
      {"ke", [](Context& c) { return power(c, Quantity::KE); }},
      {"kea", [](Context& c) { return power(c, Quantity::KEa); }},
      {"kd", [](Context& c) { return power(c, Quantity::Kd); }},
      {"bounds", cmd_bounds},
      {"classify", cmd_classify},
      {"perm3", cmd_perm3},
      {"cp3", cmd_cp3},
      {"gcnot", cmd_gcnot},
      {"sr4", cmd_sr4},
      {"clifford", cmd_clifford},
      {"symmetrize", cmd_symmetrize},
      {"protocol", cmd_protocol},
      {"unital", cmd_unital},
      {"sic", cmd_sic},
      {"probe-conjectures", cmd_probe},
  };
  const std::map<std::string, std::string> help{
      {"schmidt", "Operator Schmidt decomposition"},
      {"ke", "Entangling power K_E"},
      {"kea", "Assisted entangling power K_Ea"},
      {"kd", "Disentangling power K_d"},
      {"bounds", "Bound chain K_Sch <= K_E <= K_Ea <= upper bounds"},
      {"classify", "Structure report"},
      {"perm3", "Closed form for Schmidt-rank-3 permutation unitaries"},
      {"cp3", "Closed form for 2 x dB Schmidt-rank-3 complex permutations"},
      {"gcnot", "Generalized CNOT test"},
      {"sr4", "Two-ebit witness for 2 x dB Schmidt-rank-4 complex permutations"},
      {"clifford", "Powers of a generalized Clifford gate"},
      {"symmetrize", "Symmetric form of a 2-controlled dA x 2 Schmidt-rank-3 gate"},
      {"protocol", "Branch enumeration of the probabilistic implementation protocol"},
      {"unital", "Unital channel family checks"},
      {"sic", "SIC fiducial search and entangling check"},
      {"probe-conjectures", "Sweeps comparing conjectured and numeric values"},
  };
  for (const auto& [name, h] : help) app.add_subcommand(name, h);
  app.get_subcommand("unital")->add_option("--family", f.family, "hw or diagonal");
  for (const char* name : {"unital", "sic"}) app.get_subcommand(name)->add_option("--d", f.d, "Dimension");
  for (const char* name : {"unital", "probe-conjectures"})
    app.get_subcommand(name)->add_option("--samples", f.samples, "Sample count")->check(CLI::PositiveNumber);
  auto* gen = app.add_subcommand("gen", "Write a matrix file: named NAME [dA dB] | ud1 | phases | haar | "
                                        "permutation | complex-permutation | controlled dA dB");
  gen->add_option("args", f.genArgs, "Kind and its arguments")->required();
  gen->add_option("--rank", f.rank, "Target Schmidt rank");
  gen->add_option("--m", f.m);
  gen->add_option("--n", f.n);
  gen->add_option("--q", f.q);
  gen->add_option("--p", f.p);
  gen->add_option("--thetas", f.thetas, "Phases for gen phases")->delimiter(',');
  gen->add_option("--da", f.dA, "Control dimension for gen phases");
  gen->add_option("--prank", f.pRank, "Projector rank for gen phases");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    if (name == "gen") {
      emit(f, write_matrix(generate(f)), out);
      return kOk;
    }
    Context ctx(f);
    Json results = handlers.at(name)(ctx);
    ctx.provenance["seed"] = f.seed;
    ctx.provenance["tolerance"] = f.tol;
    ctx.provenance["version"] = kVersion;
    Json report{{"command", args},
                {"inputs", ctx.inputs},
                {"results", results},
                {"provenance", ctx.provenance},
                {"warnings", ctx.warnings}};
    std::ostringstream os;
    if (f.json)
      os << report.dump(2) << "\n";
    else
      render_text(report, "", os);
    emit(f, os.str(), out);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const MatrixError& e) {
    err << "invalid matrix: " << e.what() << "\n";
    return kBadMatrix;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ConstructionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const SamplingExhausted& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const SearchFailed& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(args, out, err);
}

}  // namespace entpower::cli
