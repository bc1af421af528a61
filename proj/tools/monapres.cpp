// Batch front end: decide every sentence in the given files, or encode a polynomial.

#include <monapres/encoder.hpp>
#include <monapres/report.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

using namespace monapres;

namespace {

struct Config {
  std::vector<std::string> files;
  std::string bound{"1000000"};
  std::uint64_t scan_cap{1000000};
  std::string format{"human"};
  bool trace{false};
  bool multi{false};
  unsigned jobs{0};
};

std::optional<std::string> slurp(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Record> run_file(const std::string& path, const Config& cfg, const SolverOptions& opt) {
  auto text = slurp(path);
  if (!text) return {error_record(path, "cannot read file")};
  std::vector<Sentence> sentences;
  try {
    if (cfg.multi) sentences = parse_all(*text);
    else sentences.push_back(parse(*text));
  } catch (const ParseError& e) {
    return {error_record(path, e.what())};
  }
  std::vector<Record> out;
  for (std::size_t i = 0; i < sentences.size(); ++i) out.push_back(make_record(path, i, decide_sentence(sentences[i], opt)));
  return out;
}

void print_human(const Record& r, bool with_file, bool trace) {
  std::string prefix = with_file ? r.file + (r.index ? "#" + std::to_string(r.index) : "") + ": " : "";
  std::ostream& os = r.verdict == "error" ? std::cerr : std::cout;
  os << prefix << (r.verdict == "error" ? r.file + ":" + r.error : human_line(r)) << "\n";
  if (!trace) return;
  for (const auto& l : r.log) std::cout << "  log " << l << "\n";
  for (const auto& c : r.case_trace) {
    std::cout << "  case " << c.origin << " => " << c.verdict << "\n";
    for (const auto& s : c.steps) std::cout << "    " << s << "\n";
  }
  if (!r.certificate.empty()) std::cout << "  certificate " << r.certificate << "\n";
}

int decide_main(const Config& cfg) {
  SolverOptions opt;
  try {
    opt.bound = Int(cfg.bound);
  } catch (const std::invalid_argument&) {
    std::cerr << "error: --bound expects an integer\n";
    return 64;
  }
  if (opt.bound < 1 || cfg.scan_cap < 1) {
    std::cerr << "error: bounds must be at least 1\n";
    return 64;
  }
  opt.scan_cap = cfg.scan_cap;

  std::vector<std::vector<Record>> results(cfg.files.size());
  std::atomic<std::size_t> next{0};
  unsigned jobs = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(cfg.files.size()));
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < cfg.files.size();) results[i] = run_file(cfg.files[i], cfg, opt);
    });
  for (auto& t : pool) t.join();

  bool many = cfg.files.size() > 1 || cfg.multi;
  int code = 0;
  bool any_error = false;
  for (const auto& rs : results)
    for (const auto& r : rs) {
      if (cfg.format == "json-lines") std::cout << json_line(r) << "\n";
      else print_human(r, many, cfg.trace);
      int c = exit_code(r);
      any_error = any_error || c == 64;
      code = std::max(code, c == 64 ? 0 : c);
    }
  return any_error ? 64 : code;
}

int encode_main(const std::string& poly, std::int64_t check_grid, unsigned chain_length) {
  encoder::MultiPoly h;
  try {
    h = encoder::parse_poly(poly);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  }
  encoder::EncodeOptions eo;
  eo.chain_length = chain_length;
  encoder::Encoding e = encoder::encode(h, eo);
  std::cout << "; " << e.scale.get_str() << " * " << h.str() << " = 0\n";
  std::cout << "; bound variables:";
  for (const auto& v : encoder::bound_variables(e.formula)) std::cout << " " << v;
  std::cout << "\n" << e.formula.str() << "\n";
  if (check_grid > 0) {
    auto rep = encoder::check_equiv(h, e.formula, check_grid, chain_length);
    std::cout << "; check grid=" << check_grid << " points=" << rep.points << ": " << (rep.pass ? "pass" : "FAIL") << "\n";
    if (!rep.pass) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide sentences of Presburger arithmetic with power and polynomial predicates."};
  app.set_version_flag("--version", "monapres 0.1");
  Config cfg;
  app.add_option("files", cfg.files, "input files ('-' for stdin)");
  app.add_option("--bound", cfg.bound, "search bound H for bounded cases")->envname("MONAPRES_BOUND");
  app.add_option("--scan-cap", cfg.scan_cap, "maximum candidates inspected per disjunct")->envname("MONAPRES_SCAN_CAP");
  app.add_option("--format", cfg.format, "human or json-lines")
      ->check(CLI::IsMember({"human", "json-lines"}))
      ->envname("MONAPRES_FORMAT");
  app.add_flag("--trace", cfg.trace, "print case labels and rewrite log")->envname("MONAPRES_TRACE");
  app.add_flag("--multi", cfg.multi, "allow several sentences per file")->envname("MONAPRES_MULTI");
  app.add_option("-j,--jobs", cfg.jobs, "files decided in parallel (default: hardware threads)")->envname("MONAPRES_JOBS");

  auto* enc = app.add_subcommand("encode", "rewrite h(x1..xn) = 0 over Z^2 with at most four bound variables");
  std::string poly;
  std::int64_t grid = 0;
  unsigned chain_length = 5;
  enc->add_option("polynomial", poly, "polynomial in x1, x2, ...; a path is read as a file")->required();
  enc->add_option("--check", grid, "compare against h = 0 on [-G, G]^n")->envname("MONAPRES_CHECK");
  enc->add_option("--chain-length", chain_length, "squares per chain")->check(CLI::Range(2u, 64u))->envname("MONAPRES_CHAIN_LENGTH");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return e.get_exit_code() == 0 ? rc : 64;
  }

  if (enc->parsed()) {
    if (auto text = slurp(poly); text && poly != "-") poly = *text;
    return encode_main(poly, grid, chain_length);
  }
  if (cfg.files.empty()) {
    std::cerr << app.help();
    return 64;
  }
  return decide_main(cfg);
}
