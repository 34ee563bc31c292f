// Command-line surface: trees in, certificates out.

#include <chrono>
#include <future>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "plumbline/certificate_io.hpp"
#include "plumbline/errors.hpp"
#include "plumbline/knotdata.hpp"
#include "plumbline/link.hpp"
#include "plumbline/surface.hpp"
#include "plumbline/svg.hpp"
#include "plumbline/theorems.hpp"
#include "plumbline/tree.hpp"

namespace {

using namespace plumbline;

constexpr int kExitOk = 0;
constexpr int kExitDeclined = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) out += (isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
  return out;
}

Manifold parse_manifold(const std::string& spec) {
  if (spec == "K3") return Manifold::K3();
  if (spec.rfind("E:", 0) == 0) {
    int n = std::atoi(spec.c_str() + 2);
    if (n < 2) throw InputError("E:n needs n >= 2 (every knot is slice in E(1))");
    return Manifold::En(n);
  }
  if (spec.rfind("zero-sphere:", 0) == 0) {
    int g = std::atoi(spec.c_str() + 12);
    if (g < 0 || (g == 0 && spec != "zero-sphere:0"))
      throw InputError("zero-sphere:g needs an integer genus g >= 0");
    return Manifold::zero_sphere(g);
  }
  throw InputError("unknown manifold spec `" + spec + "`; expected K3, E:n, or zero-sphere:g");
}

int run_assoc_link(const std::string& tree_file, const std::string& svg_out, const std::string& pd_out) {
  LBTree t = parse_lbtree_text(read_file(tree_file));
  LinkDiagram l = associated_link(t);
  std::string pd = format_pd_text(l);
  if (!pd_out.empty())
    write_file(pd_out, pd);
  else
    std::cout << pd;
  if (!svg_out.empty()) write_file(svg_out, associated_link_svg(t));
  return kExitOk;
}

int run_bicolour(const std::string& tree_file) {
  LBTree t = parse_lbtree_text(read_file(tree_file));
  Bicolouring c = compatible_bicolouring(t);
  std::cout << format_lbtree_text(t, c);
  return kExitOk;
}

int run_embed(const std::string& plumbing_file, const std::string& json_out) {
  PlumbingTree p = parse_plumbing_text(read_file(plumbing_file));
  ImmersedSurface s = make_plumbing(p);
  EmbedResult er = embed_in_plumbing(s);
  ValidationReport report = verify_embedding(er.embedding);
  nlohmann::json j;
  j["tree_text"] = format_lbtree_text(er.tree, compatible_bicolouring(er.tree));
  j["embedding"] = embedding_maps_to_json(er.embedding);
  j["verified"] = report.ok;
  std::string out = j.dump(2) + "\n";
  if (!json_out.empty())
    write_file(json_out, out);
  else
    std::cout << out;
  return report.ok ? kExitOk : kExitInternal;
}

int run_certify(const std::string& csv, const std::string& manifold_spec, const std::string& out_dir) {
  Manifold m = parse_manifold(manifold_spec);
  CsvLoadResult table = load_knot_csv(csv);
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  bool any_declined = false;
  bool any_failed = false;
  for (const auto& rej : table.rejects)
    std::cout << "reject row " << rej.row << ": " << rej.reason << "\n";

  // pipelines are pure, so records certify concurrently; results merge in
  // input order
  std::vector<std::future<Certificate>> futures;
  futures.reserve(table.records.size());
  for (const KnotRecord& rec : table.records)
    futures.push_back(std::async(std::launch::async, [&m, rec] {
      return m.zero_framed() ? certify_norman(rec, m) : certify_slice_in_plumbing(rec, m);
    }));
  for (size_t i = 0; i < futures.size(); ++i) {
    const KnotRecord& rec = table.records[i];
    Certificate cert;
    try {
      cert = futures[i].get();
    } catch (const Error& e) {
      std::cout << rec.name << ": error: " << e.what() << "\n";
      any_failed = true;
      continue;
    }
    std::string verdict = verdict_kind_name(cert.verdict.kind);
    if (cert.verdict.kind == VerdictKind::genus_bound)
      verdict += " " + std::to_string(cert.verdict.genus);
    std::cout << rec.name << ": " << verdict;
    if (cert.verdict.kind == VerdictKind::not_certified) std::cout << " (" << cert.verdict.reason << ")";
    std::cout << "\n";
    if (!out_dir.empty())
      write_file(out_dir + "/" + sanitize(rec.name) + ".cert.json", certificate_to_string(cert));
    any_declined = any_declined || cert.verdict.kind == VerdictKind::not_certified;
    any_failed = any_failed || cert.failed;
  }
  if (any_failed) return kExitInternal;
  if (any_declined) return kExitDeclined;
  return kExitOk;
}

int run_verify_certificate(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const std::exception& e) {
    std::cerr << "error: not a JSON certificate: " << e.what() << "\n";
    return kExitInput;
  }
  VerifyOutcome out = verify_certificate(j);
  for (const auto& line : out.lines) std::cout << line << "\n";
  std::cout << (out.pass ? "PASS" : "FAIL") << "\n";
  return out.pass ? kExitOk : kExitInternal;
}

int run_invariants(const std::string& pd_file, bool want_jones, bool want_bracket) {
  LinkDiagram l = parse_pd_text(read_file(pd_file));
  if (!want_jones && !want_bracket) want_jones = want_bracket = true;
  if (want_bracket)
    std::cout << "bracket: " << kauffman_bracket(l).to_string_int("A") << "\n";
  if (want_jones) {
    LinkDiagram ol = l.oriented ? l : orient(l);
    std::cout << "jones: " << jones(ol).to_string_half("t") << "\n";
  }
  return kExitOk;
}

int run_bench(const std::string& suite) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::duration d) {
    return std::chrono::duration_cast<std::chrono::microseconds>(d).count() / 1000.0;
  };
  std::cout << "suite  case  result  time_ms\n";
  if (suite == "bracket") {
    std::mt19937_64 rng(7);
    for (int k = 2; k <= 9; ++k) {
      LBTree t = random_lbtree(k, rng);
      LinkDiagram l = associated_link(t);
      BracketOptions naive_opts;
      naive_opts.fast_path = false;
      naive_opts.crossing_cap = 2 * k;
      auto t0 = clock::now();
      LaurentPoly naive = kauffman_bracket(l, naive_opts);
      auto t1 = clock::now();
      LaurentPoly fast = kauffman_bracket(l);
      auto t2 = clock::now();
      std::cout << "bracket  naive-" << 2 * k << "x  " << (naive == fast ? "ok" : "MISMATCH") << "  "
                << ms(t1 - t0) << "\n";
      std::cout << "bracket  fast-" << 2 * k << "x  ok  " << ms(t2 - t1) << "\n";
    }
    return kExitOk;
  }
  if (suite == "pipeline") {
    for (int n : {10, 22, 40}) {
      PlumbingTree p = n == 22 ? k3_plumbing() : en_plumbing(2);
      if (n != 22) {
        p = PlumbingTree{};
        p.graph.vertices.resize(n);
        for (int i = 0; i < n; ++i) {
          p.graph.vertices[i] = i;
          p.genus[i] = 0;
        }
        for (int i = 0; i + 1 < n; ++i) p.graph.edges.push_back({i, i + 1});
      }
      KnotRecord rec{"bench-" + std::to_string(n), n - 1, std::nullopt, std::nullopt, "bench"};
      Manifold m = Manifold::custom_plumbing(p, "bench(" + std::to_string(n) + ")");
      auto t0 = clock::now();
      Certificate cert = certify_slice_in_plumbing(rec, m);
      auto t1 = clock::now();
      std::cout << "pipeline  n=" << n << "  " << verdict_kind_name(cert.verdict.kind) << "  "
                << ms(t1 - t0) << "\n";
    }
    return kExitOk;
  }
  throw InputError("unknown bench suite `" + suite + "`; expected bracket or pipeline");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plumbline: sliceness certificates from sphere plumbings and tubing"};
  app.require_subcommand(1);

  std::string tree_file, svg_out, pd_out;
  auto* assoc = app.add_subcommand("assoc-link", "Associated link of a locally bipartitioned tree");
  assoc->add_option("--tree", tree_file, "tree file (`u v [0|1]` per edge)")->required();
  assoc->add_option("--svg", svg_out, "write an SVG rendering here");
  assoc->add_option("--pd", pd_out, "write the PD code here instead of stdout");

  std::string bic_tree;
  auto* bic = app.add_subcommand("bicolour", "Compatible bicolouring of a tree's bipartitions");
  bic->add_option("--tree", bic_tree, "tree file")->required();

  std::string plumbing_file, embed_json;
  auto* embed = app.add_subcommand("embed", "Embed a tree into a plumbing of surfaces");
  embed->add_option("--plumbing", plumbing_file, "plumbing file (`vertex id genus [euler]`, `edge u v`)")
      ->required();
  embed->add_option("--json", embed_json, "write tree + embedding JSON here instead of stdout");

  std::string knots_csv, manifold_spec, out_dir;
  auto* certify = app.add_subcommand("certify", "Certify sliceness / genus bounds for a knot table");
  certify->add_option("--knots", knots_csv, "CSV with header name,u,c4,g4")->required();
  certify->add_option("--manifold", manifold_spec, "K3 | E:n | zero-sphere:g")->required();
  certify->add_option("--out", out_dir, "directory for certificate JSON files");

  std::string cert_file;
  auto* verify = app.add_subcommand("verify-certificate", "Re-check a certificate from its own data");
  verify->add_option("certificate", cert_file, "certificate JSON file")->required();

  std::string pd_file;
  bool want_jones = false, want_bracket = false;
  auto* inv = app.add_subcommand("invariants", "Kauffman bracket / Jones polynomial of a PD code");
  inv->add_option("--pd", pd_file, "PD file (`X(a,b,c,d)` lines, optional `C label: arcs`)")->required();
  inv->add_flag("--jones", want_jones, "print the Jones polynomial");
  inv->add_flag("--bracket", want_bracket, "print the Kauffman bracket");

  std::string suite;
  auto* bench = app.add_subcommand("bench", "Timing table for state sums and pipelines");
  bench->add_option("--suite", suite, "bracket | pipeline")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*assoc) return run_assoc_link(tree_file, svg_out, pd_out);
    if (*bic) return run_bicolour(bic_tree);
    if (*embed) return run_embed(plumbing_file, embed_json);
    if (*certify) return run_certify(knots_csv, manifold_spec, out_dir);
    if (*verify) return run_verify_certificate(cert_file);
    if (*inv) return run_invariants(pd_file, want_jones, want_bracket);
    if (*bench) return run_bench(suite);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == Error::Kind::internal ? kExitInternal : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}
