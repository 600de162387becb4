#include "mstd/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mstd/json_io.hpp"
#include "mstd/reproduce.hpp"

namespace mstd::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string budget;
  std::string diameter_cap;
};

// Where a command gets its input set from.
struct SetInput {
  std::string literal;  // "0,2,3" or "@file"
  std::string seq;
  std::string terms = "18";
  std::string primes_upto;
};

// Accepts plain integers and exact scientific notation such as 1e7.
std::uint64_t parse_count(const std::string& text, const std::string& name) {
  if (text.empty()) throw UsageError(name + ": missing value");
  std::size_t used = 0;
  double value = 0;
  try {
    if (text.find_first_of("eE.") == std::string::npos) return std::stoull(text, &used);
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(name + ": expected a nonnegative integer, got '" + text + "'");
  }
  if (used != text.size() || value < 0 || value != std::floor(value) || value > 1.8e19) {
    throw UsageError(name + ": expected a nonnegative integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(value);
}

Limits make_limits(const GlobalOptions& g) {
  Limits limits;
  if (!g.diameter_cap.empty()) limits.diameter_cap = parse_count(g.diameter_cap, "--diameter-cap");
  return limits;
}

std::uint64_t budget_or(const GlobalOptions& g, std::uint64_t fallback) {
  return g.budget.empty() ? fallback : parse_count(g.budget, "--budget");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void check_set_literal(const std::string& text) {
  if (text.find_first_not_of("0123456789, \t-") != std::string::npos)
    throw UsageError("malformed set '" + text + "': expected comma-separated integers like 0,2,3");
}

SequenceSpec parse_sequence(const std::string& text) {
  if (text.empty()) throw UsageError("--seq: missing sequence description");
  if (text.front() == '@' || text.front() == '{') {
    const std::string body = text.front() == '@' ? read_file(text.substr(1)) : text;
    try {
      return Json::parse(body).get<SequenceSpec>();
    } catch (const Json::exception& e) {
      throw UsageError(std::string("--seq: invalid sequence JSON: ") + e.what());
    }
  }
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string params = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto numbers = [](const std::string& list) {
    std::vector<Int> out;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        out.push_back(std::stoll(tok));
      } catch (const std::exception&) {
        throw UsageError("--seq: malformed number '" + tok + "'");
      }
    }
    return out;
  };
  if (kind == "fibonacci") return SequenceSpec::fibonacci();
  if (kind == "shifted_geometric" || kind == "geometric") {
    const auto v = numbers(params);
    if (v.size() != 3) throw UsageError("--seq shifted_geometric:c,r,d needs three numbers");
    auto s = SequenceSpec::shifted_geometric(v[0], v[1], v[2]);
    s.validate();
    return s;
  }
  if (kind == "explicit") return SequenceSpec::explicit_terms(numbers(params));
  if (kind == "linear_recurrence" || kind == "recurrence") {
    const auto semi = params.find(';');
    if (semi == std::string::npos)
      throw UsageError("--seq linear_recurrence:COEFFS;SEEDS, e.g. linear_recurrence:1,1;1,2");
    auto s = SequenceSpec::linear_recurrence(numbers(params.substr(0, semi)), numbers(params.substr(semi + 1)));
    s.validate();
    return s;
  }
  throw UsageError("--seq: unknown sequence kind '" + kind +
                   "' (fibonacci, shifted_geometric:c,r,d, linear_recurrence:COEFFS;SEEDS, explicit:..., @file.json)");
}

IntSet resolve_set(const SetInput& in, const Limits& limits, const std::string& command) {
  const int sources = !in.literal.empty() + !in.seq.empty() + !in.primes_upto.empty();
  if (sources == 0) {
    throw UsageError(command + ": no input set; pass a list like 0,2,3,4,7,11,12,14, @file, --seq or --primes-upto");
  }
  if (sources > 1) throw UsageError(command + ": give exactly one of SET, --seq, --primes-upto");
  if (!in.seq.empty()) {
    const auto n = parse_count(in.terms, "--terms");
    return IntSet(materialize(parse_sequence(in.seq), n), limits);
  }
  if (!in.primes_upto.empty()) {
    return IntSet(primes_up_to(static_cast<Int>(parse_count(in.primes_upto, "--primes-upto"))), limits);
  }
  if (in.literal.front() == '@') {
    std::istringstream lines(read_file(in.literal.substr(1)));
    std::string line;
    std::string joined;
    while (std::getline(lines, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (!joined.empty()) joined += ',';
      joined += line;
    }
    check_set_literal(joined);
    return IntSet::parse(joined, limits);
  }
  check_set_literal(in.literal);
  return IntSet::parse(in.literal, limits);
}

void add_set_input(CLI::App* cmd, SetInput& in) {
  cmd->add_option("set", in.literal, "comma-separated integers, or @file with one integer per line");
  cmd->add_option("--seq", in.seq, "sequence generator, e.g. fibonacci or shifted_geometric:1,3,1");
  cmd->add_option("--terms", in.terms, "number of sequence terms for --seq")->capture_default_str();
  cmd->add_option("--primes-upto", in.primes_upto, "use all primes up to this bound");
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit(std::ostream& out, const GlobalOptions& g, const Json& report) {
  if (g.format == "table" && report.is_object()) {
    std::size_t width = 0;
    for (auto& [key, value] : report.items()) width = std::max(width, key.size());
    for (auto& [key, value] : report.items())
      out << std::left << std::setw(static_cast<int>(width) + 2) << key << scalar_text(value) << '\n';
    return;
  }
  out << report.dump() << '\n';
}

Objective parse_objective(const std::string& text) {
  if (text == "first-hit") return Objective::kFirstHit;
  if (text == "count-all") return Objective::kCountAll;
  if (text == "max-element" || text == "minimize-max-element") return Objective::kMinimizeMaxElement;
  if (text == "diameter" || text == "minimize-diameter") return Objective::kMinimizeDiameter;
  throw UsageError("unknown objective '" + text + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sum-dominant (MSTD) set toolkit: sumsets, certificates, searches and prime tuples"};
  app.name(args.empty() ? "mstd" : args.front());
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file (format, seed, threads, budget, diameter-cap)");

  GlobalOptions g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  app.add_option("--seed", g.seed, "seed for stochastic commands");
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
  app.add_option("--budget", g.budget, "maximum number of subsets examined");
  app.add_option("--diameter-cap", g.diameter_cap, "largest set diameter (default 2^24)");

  SetInput set_in;
  auto* classify_cmd = app.add_subcommand("classify", "sumset/difference-set sizes and MSTD verdict");
  add_set_input(classify_cmd, set_in);
  auto* sumset_cmd = app.add_subcommand("sumset", "S+S");
  add_set_input(sumset_cmd, set_in);
  auto* diffset_cmd = app.add_subcommand("diffset", "S-S");
  add_set_input(diffset_cmd, set_in);

  unsigned expand_k = 2;
  auto* expand_cmd = app.add_subcommand("expand", "base expansion S_k with base 2*max(S)+1");
  add_set_input(expand_cmd, set_in);
  expand_cmd->add_option("-k,--k", expand_k, "number of digits")->capture_default_str();

  std::string append_x;
  unsigned bound_r = 3;
  auto* append_cmd = app.add_subcommand("append", "new sums and differences from appending x");
  add_set_input(append_cmd, set_in);
  append_cmd->add_option("--x", append_x, "element to append")->required();
  auto* bound_cmd = app.add_subcommand("bound", "new-difference bound for appending a large element");
  add_set_input(bound_cmd, set_in);
  bound_cmd->add_option("--x", append_x, "element to append")->required();
  bound_cmd->add_option("--r", bound_r, "growth window")->capture_default_str();

  std::string min_size = "1", max_size, samples = "100000", objective = "count-all", mode = "exhaustive";
  bool special = false, no_prune = false;
  std::size_t hit_cap = kDefaultHitCap;
  auto* search_cmd = app.add_subcommand("search", "find or count MSTD subsets of a ground set");
  add_set_input(search_cmd, set_in);
  search_cmd->add_option("--min-size", min_size)->capture_default_str();
  search_cmd->add_option("--max-size", max_size);
  search_cmd->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "monte-carlo"}))->capture_default_str();
  search_cmd->add_option("--samples", samples, "monte-carlo samples")->capture_default_str();
  search_cmd->add_option("--objective", objective, "first-hit or count-all")->capture_default_str();
  search_cmd->add_flag("--special", special, "only special MSTD sets (gap >= |S|)");
  search_cmd->add_flag("--no-prune", no_prune, "disable the minimal-diameter pruning rule");
  search_cmd->add_option("--hit-cap", hit_cap)->capture_default_str();

  std::string density_n = "100";
  auto* density_cmd = app.add_subcommand("density", "Monte Carlo MSTD density of {0..n}");
  density_cmd->add_option("--n", density_n)->capture_default_str();
  density_cmd->add_option("--samples", samples)->capture_default_str();

  std::string minimal_objective = "max-element";
  auto* minimal_cmd = app.add_subcommand("minimal", "smallest MSTD subset of a ground set");
  add_set_input(minimal_cmd, set_in);
  minimal_cmd->add_option("--objective", minimal_objective, "max-element or diameter")->capture_default_str();

  std::string seq_text, upto = "40", window = "3", start = "4";
  auto* certify_cmd = app.add_subcommand("certify", "certify a sequence has no MSTD subsets");
  certify_cmd->add_option("--seq", seq_text)->required();
  certify_cmd->add_option("--r", window)->capture_default_str();
  certify_cmd->add_option("--upto", upto)->capture_default_str();

  auto* finite_cmd = app.add_subcommand("certify-finite", "check the finitely-many-MSTD-subsets hypotheses");
  finite_cmd->add_option("--seq", seq_text)->required();
  finite_cmd->add_option("--s", start)->capture_default_str();
  finite_cmd->add_option("--upto", upto)->capture_default_str();

  bool growth_from = false;
  auto* growth_cmd = app.add_subcommand("growth", "check a_k > a_{k-1} + a_{k-r}");
  growth_cmd->add_option("--seq", seq_text)->required();
  growth_cmd->add_option("--r", window, "window r, or start index s with --from")->capture_default_str();
  growth_cmd->add_option("--upto", upto)->capture_default_str();
  growth_cmd->add_flag("--from", growth_from, "check a_k > a_{k-1} + a_{k-3} for k >= r instead");

  std::string term_count = "10";
  auto* terms_cmd = app.add_subcommand("terms", "first terms of a sequence");
  terms_cmd->add_option("--seq", seq_text)->required();
  terms_cmd->add_option("-n,--n", term_count)->capture_default_str();

  auto* primes_cmd = app.add_subcommand("primes", "prime tuples, Hardy-Littlewood predictions, prime APs");
  primes_cmd->require_subcommand(1);
  std::string offsets, tol = "1e-3", ap_length = "10", ap_bound = "1000", ap_max_diff = "0";
  std::string primes_upto = "10000";
  auto* adm_cmd = primes_cmd->add_subcommand("admissible", "admissibility of an offset tuple");
  adm_cmd->add_option("offsets", offsets)->required();
  auto* series_cmd = primes_cmd->add_subcommand("series", "singular series G(b_1..b_m)");
  series_cmd->add_option("offsets", offsets)->required();
  series_cmd->add_option("--tol", tol)->capture_default_str();
  auto* match_cmd = primes_cmd->add_subcommand("match", "count n <= x with every n+b_i prime");
  match_cmd->add_option("offsets", offsets)->required();
  match_cmd->add_option("--upto", primes_upto)->capture_default_str();
  auto* ap_cmd = primes_cmd->add_subcommand("ap", "arithmetic progression of primes");
  ap_cmd->add_option("--length", ap_length)->capture_default_str();
  ap_cmd->add_option("--bound", ap_bound, "largest first term")->capture_default_str();
  ap_cmd->add_option("--max-diff", ap_max_diff, "largest difference (0 = automatic)")->capture_default_str();
  auto* pmstd_cmd = primes_cmd->add_subcommand("mstd", "MSTD subsets of the primes from the 30x Conway tuple");
  pmstd_cmd->add_option("--upto", primes_upto)->capture_default_str();

  std::string claim;
  bool list_claims = false;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "run a pinned reproduction pipeline");
  reproduce_cmd->add_option("claim", claim, "claim id");
  reproduce_cmd->add_option("--samples", samples, "override sample count (density claim)");
  reproduce_cmd->add_flag("--list", list_claims, "list claim ids");

  std::vector<const char*> argv;
  std::vector<std::string> owned = args.empty() ? std::vector<std::string>{"mstd"} : args;
  for (const auto& a : owned) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    const Limits limits = make_limits(g);
    const std::uint64_t seed = g.seed.value_or(0);

    if (*classify_cmd) {
      emit(out, g, classify(resolve_set(set_in, limits, "classify"), limits));
    } else if (*sumset_cmd) {
      emit(out, g, sumset(resolve_set(set_in, limits, "sumset"), limits));
    } else if (*diffset_cmd) {
      emit(out, g, diffset(resolve_set(set_in, limits, "diffset"), limits));
    } else if (*expand_cmd) {
      emit(out, g, base_expansion(resolve_set(set_in, limits, "expand"), expand_k, limits));
    } else if (*append_cmd) {
      const auto x = static_cast<Int>(parse_count(append_x, "--x"));
      emit(out, g, append_analysis(resolve_set(set_in, limits, "append"), x, limits));
    } else if (*bound_cmd) {
      const auto x = static_cast<Int>(parse_count(append_x, "--x"));
      emit(out, g, verify_difference_bound(resolve_set(set_in, limits, "bound"), x, bound_r));
    } else if (*search_cmd) {
      SearchConfig cfg;
      cfg.ground = resolve_set(set_in, limits, "search");
      cfg.min_size = parse_count(min_size, "--min-size");
      if (!max_size.empty()) cfg.max_size = parse_count(max_size, "--max-size");
      cfg.budget = budget_or(g, kUnlimitedBudget);
      cfg.mode = mode == "monte-carlo" ? SearchMode::kMonteCarlo : SearchMode::kExhaustive;
      cfg.samples = parse_count(samples, "--samples");
      cfg.seed = seed;
      cfg.objective = parse_objective(objective);
      if (cfg.objective != Objective::kFirstHit && cfg.objective != Objective::kCountAll)
        throw UsageError("search: --objective must be first-hit or count-all (see `minimal`)");
      cfg.prune_small_diameter = !no_prune;
      cfg.hit_cap = hit_cap;
      cfg.threads = g.threads;
      cfg.limits = limits;
      if (special) {
        emit(out, g, special_search(cfg));
      } else {
        emit(out, g, cfg.mode == SearchMode::kMonteCarlo ? monte_carlo_search(cfg) : exhaustive_search(cfg));
      }
    } else if (*density_cmd) {
      emit(out, g,
           monte_carlo_density(static_cast<Int>(parse_count(density_n, "--n")), parse_count(samples, "--samples"),
                               seed, g.threads));
    } else if (*minimal_cmd) {
      emit(out, g,
           minimal_mstd_in(resolve_set(set_in, limits, "minimal"), parse_objective(minimal_objective),
                           budget_or(g, std::uint64_t{1} << 24), g.threads));
    } else if (*certify_cmd) {
      CertifyOptions opts{budget_or(g, std::uint64_t{1} << 24), g.threads};
      emit(out, g,
           certify_no_mstd(parse_sequence(seq_text), static_cast<unsigned>(parse_count(window, "--r")),
                           parse_count(upto, "--upto"), opts));
    } else if (*finite_cmd) {
      CertifyOptions opts{budget_or(g, std::uint64_t{1} << 24), g.threads};
      emit(out, g,
           certify_finitely_many(parse_sequence(seq_text), parse_count(start, "--s"), parse_count(upto, "--upto"),
                                 opts.budget, opts));
    } else if (*growth_cmd) {
      const auto spec = parse_sequence(seq_text);
      const auto w = parse_count(window, "--r");
      emit(out, g,
           growth_from ? check_growth_from(spec, w, parse_count(upto, "--upto"))
                       : check_growth(spec, static_cast<unsigned>(w), parse_count(upto, "--upto")));
    } else if (*terms_cmd) {
      emit(out, g, Json{{"terms", materialize(parse_sequence(seq_text), parse_count(term_count, "--n"))}});
    } else if (*primes_cmd) {
      auto tuple = [&] {
        try {
          return PrimeTuple::parse(offsets);
        } catch (const DomainError& e) {
          throw UsageError(e.what());
        }
      };
      if (*adm_cmd) {
        emit(out, g, is_admissible(tuple()));
      } else if (*series_cmd) {
        const double t = std::stod(tol);
        emit(out, g, singular_series(tuple(), t));
      } else if (*match_cmd) {
        emit(out, g, match_tuple(tuple(), static_cast<Int>(parse_count(primes_upto, "--upto")), {.threads = g.threads}));
      } else if (*ap_cmd) {
        const auto ap = find_prime_ap(parse_count(ap_length, "--length"), static_cast<Int>(parse_count(ap_bound, "--bound")),
                                      static_cast<Int>(parse_count(ap_max_diff, "--max-diff")));
        Json report{{"found", ap.has_value()}, {"progression", ap ? Json(*ap) : Json(nullptr)}};
        if (ap && ap->length >= 15) report["mstd_subset"] = mstd_in_ap(*ap);
        emit(out, g, report);
      } else if (*pmstd_cmd) {
        const auto t = conway_tuple();
        const auto match = match_tuple(t, static_cast<Int>(parse_count(primes_upto, "--upto")), {.threads = g.threads});
        Json sets = Json::array();
        for (Int n : match.matches) {
          const auto s = dilated_conway(n, 30);
          sets.push_back(Json{{"elements", s.values()}, {"classification", classify(s)}});
        }
        emit(out, g, Json{{"tuple", t}, {"admissible", is_admissible(t)}, {"match", match}, {"sets", sets}});
      }
    } else if (*reproduce_cmd) {
      if (list_claims) {
        emit(out, g, Json{{"claims", reproducible_claims()}});
        return kOk;
      }
      if (claim.empty()) throw UsageError("reproduce: give a claim id (see reproduce --list)");
      ReproduceOverrides o;
      if (reproduce_cmd->count("--samples")) o.samples = parse_count(samples, "--samples");
      o.seed = g.seed;
      o.threads = g.threads;
      Json result;
      try {
        result = reproduce_claim(claim, o);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      emit(out, g, result);
      return result.at("pass").get<bool>() ? kOk : kDomainError;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << " (raise --diameter-cap or --budget)\n";
    return kDomainError;
  }
  return kOk;
}

}  // namespace mstd::cli
