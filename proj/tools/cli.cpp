#include "cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "snforge/error.hpp"

namespace snforge::cli {

int exit_code(Status s) {
  switch (s) {
    case Status::Inner:
      return kInner;
    case Status::NotInner:
      return kNotInner;
    case Status::Unsupported:
    case Status::Exhausted:
      return kUnsupported;
  }
  return kInputError;
}

std::uint64_t resolve_seed(const Options& opts, const io::Problem& p) {
  if (opts.seed) return *opts.seed;
  if (p.seed) return *p.seed;
  if (const char* env = std::getenv("SNFORGE_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw InputError("SNFORGE_SEED must be a non-negative integer, got \"" + std::string(env) + "\"");
    return v;
  }
  return 0;
}

unsigned resolve_trials(const Options& opts, const io::Problem& p) {
  if (opts.trials) return *opts.trials;
  if (p.trials) return *p.trials;
  return 64;
}

namespace {

std::vector<TensorElement> problem_images(const io::Problem& p) {
  if (p.images.empty()) return conjugation_images(*p.conjugator);
  if (p.conjugator && conjugation_images(*p.conjugator) != p.images)
    throw DomainError("the given images are not the conjugates by the given conjugator");
  return p.images;
}

void describe(const Certificate& cert, std::vector<std::string>& lines) {
  lines.push_back("status: " + status_name(cert.status) + " (backend " + cert.backend + ")");
  if (!cert.message.empty()) lines.push_back("message: " + cert.message);
  if (cert.conjugator) lines.push_back("c = " + cert.conjugator->to_string());
  for (const auto& t : cert.transcript) lines.push_back("  " + t);
}

std::string vec_string(const AlgebraPtr& a, const Vec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + v[i].to_string() + ")*" + a->labels()[i];
  }
  return s.empty() ? "0" : s;
}

}  // namespace

Outcome run_problem(const io::Problem& p, const Options& opts) {
  Outcome out;
  const std::uint64_t seed = resolve_seed(opts, p);
  const unsigned trials = resolve_trials(opts, p);
  const std::string digest = io::problem_digest(p);
  switch (p.task) {
    case io::Task::validate: {
      HomValidation v = validate_hom(p.r, p.s, problem_images(p));
      if (!v.ok()) {
        out.report.push_back("not a homomorphism: " + v.violation->message);
        out.code = kInputError;
        return out;
      }
      out.report.push_back("valid unital homomorphism " + std::to_string(p.r->dimension()) + " images into R (x) " +
                           p.s->name());
      out.status = Status::Inner;
      out.code = kInner;
      return out;
    }
    case io::Task::solve: {
      SolveRequest req;
      req.phi = require_hom(p.r, p.s, problem_images(p));
      req.seed = seed;
      req.trials = trials;
      req.backend = opts.backend ? opts.backend : p.backend;
      req.presentation = p.conjugator;
      const Certificate cert = dispatch(req);
      describe(cert, out.report);
      out.status = cert.status;
      out.certificate = io::certificate_to_json(cert, digest, opts.emit_coefficients);
      break;
    }
    case io::Task::decompose_aut: {
      const AutSpec spec = validate_automorphism(p.s, p.n, *p.automorphism, p.inverse);
      const AutDecomposition d = decompose_automorphism(spec, seed, trials);
      out.status = d.status;
      out.report.push_back("status: " + status_name(d.status));
      if (d.c) out.report.push_back("c = " + d.c->to_string());
      for (std::size_t g = 0; g < d.sigma.size(); ++g)
        out.report.push_back("sigma(" + d.generators[g].to_string() + ") = " + d.sigma[g].to_string());
      for (const auto& t : d.transcript) out.report.push_back("  " + t);
      out.certificate = io::aut_certificate_to_json(d, digest);
      break;
    }
    case io::Task::derivation: {
      const DerivationSpec spec = validate_derivation(*p.bimodule, p.values);
      const DerivationWitness w = inner_derivation_witness(spec, seed, trials);
      out.status = w.status;
      out.report.push_back("status: " + status_name(w.status));
      if (w.status == Status::Inner) out.report.push_back("w = " + (p.regular_bimodule ? vec_string(p.r, w.w) : [&] {
        std::string s = "[";
        for (std::size_t i = 0; i < w.w.size(); ++i) s += (i ? ", " : "") + w.w[i].to_string();
        return s + "]";
      }()));
      for (const auto& t : w.transcript) out.report.push_back("  " + t);
      out.certificate = io::derivation_certificate_to_json(w, digest);
      break;
    }
    case io::Task::flip_check: {
      const FlipResult f = flip_innerness_check(p.r, seed, trials);
      out.status = f.inner ? Status::Inner : (f.defect.empty() ? Status::Exhausted : Status::NotInner);
      out.report.push_back(std::string("flip x (x) 1 -> 1 (x) x is ") + (f.inner ? "inner" : "not inner"));
      if (f.c) out.report.push_back("c = " + vec_string(f.tensor_square, *f.c));
      if (!f.defect.empty()) out.report.push_back("defect: " + f.defect);
      for (const auto& t : f.transcript) out.report.push_back("  " + t);
      out.certificate = io::flip_certificate_to_json(f, digest);
      break;
    }
  }
  out.code = exit_code(out.status);
  return out;
}

io::json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return io::json::parse(buf.str());
  } catch (const io::json::parse_error& e) {
    throw InputError(path + ": invalid JSON at byte " + std::to_string(e.byte));
  }
}

io::Problem read_problem(const std::string& path) {
  const io::json j = read_json_file(path);
  try {
    return io::problem_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw InputError(path + ": cannot write");
    o << content;
    o.flush();
    if (!o) throw InputError(path + ": write failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError(path + ": rename failed: " + ec.message());
  }
}

namespace {

template <class F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace

int cmd_solve(const std::string& problem_path, const Options& opts, std::ostream& out, std::ostream& err,
              std::optional<io::Task> expected_task) {
  return guarded(err, [&] {
    const io::Problem p = read_problem(problem_path);
    if (expected_task && p.task != *expected_task)
      throw InputError(problem_path + ": /task: problem is a " + io::task_name(p.task) + " problem, this command runs " +
                       io::task_name(*expected_task));
    const Outcome o = run_problem(p, opts);
    std::ostream& report = opts.output || o.certificate.is_null() ? out : err;
    for (const auto& line : o.report) report << line << "\n";
    if (!o.certificate.is_null()) {
      const std::string text = io::canonical_dump(o.certificate) + "\n";
      if (opts.output) {
        write_atomic(*opts.output, text);
        out << "certificate written to " << *opts.output << "\n";
      } else {
        out << text;
      }
    }
    return o.code;
  });
}

int cmd_recheck(const std::string& problem_path, const std::string& certificate_path, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const io::Problem p = read_problem(problem_path);
    const io::json cert = read_json_file(certificate_path);
    RecheckReport r;
    try {
      r = recheck(p, cert);
    } catch (const InputError& e) {
      throw InputError(certificate_path + ": " + e.what());
    }
    for (const auto& c : r.checks) out << c << "\n";
    if (!r.ok) {
      err << "recheck failed: " << r.failure << "\n";
      return static_cast<int>(kRecheckFailed);
    }
    out << "all " << r.checks.size() << " checks passed\n";
    return static_cast<int>(kInner);
  });
}

int cmd_schema(const std::string& which, std::ostream& out, std::ostream& err) {
  if (which == "problem") {
    out << io::problem_schema().dump(2) << "\n";
    return kInner;
  }
  if (which == "certificate") {
    out << io::certificate_schema().dump(2) << "\n";
    return kInner;
  }
  err << "unknown schema \"" << which << "\" (expected problem or certificate)\n";
  return kInputError;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"snforge: exact solver and certificate checker for inner extensions of algebra homomorphisms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "snforge 0.1.0");

  Options opts;
  std::uint64_t seed = 0;
  unsigned trials = 64;
  std::string backend, output, problem, certificate, demo, schema = "problem";

  auto problem_command = [&](const std::string& name, const std::string& desc, bool with_backend) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("problem", problem, "problem file (JSON)")->required();
    sub->add_option("--seed", seed, "random seed (default: problem file, then SNFORGE_SEED, then 0)");
    sub->add_option("--trials", trials, "bound on random invertibility trials")->check(CLI::Range(1u, 1u << 20));
    if (with_backend) {
      sub->add_option("--backend", backend, "force a backend")
          ->check(CLI::IsMember({"findim", "ufd", "pid-matrix", "series", "product", "curve"}));
      sub->add_flag("--emit-coefficients", opts.emit_coefficients, "include the coefficient tuple in the certificate");
    }
    sub->add_option("-o,--output", output, "certificate path (default: stdout)");
    return sub;
  };
  CLI::App* solve = problem_command("solve", "solve a problem file and emit a certificate", true);
  CLI::App* aut = problem_command("decompose-aut", "decompose an automorphism of M_n(S) as Inn(c) o (id (x) sigma)", false);
  CLI::App* der = problem_command("derivation", "find w with d(x) = w x - x w", false);
  CLI::App* flip = problem_command("flip-check", "decide whether x (x) 1 -> 1 (x) x is inner on R (x) R", false);

  CLI::App* re = app.add_subcommand("recheck", "re-verify a certificate against its problem without solving");
  re->add_option("problem", problem, "problem file")->required();
  re->add_option("certificate", certificate, "certificate file")->required();

  CLI::App* dem = app.add_subcommand("demo", "run a built-in demonstration");
  dem->add_option("name", demo, "demo name; omit to list");
  dem->add_option("--seed", seed, "random seed");
  dem->add_option("-o,--output", output, "directory for the problem and certificate files (default: .)");

  CLI::App* sch = app.add_subcommand("schema", "print the JSON schema of the file formats");
  sch->add_option("which", schema, "problem or certificate")->check(CLI::IsMember({"problem", "certificate"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : static_cast<int>(kInputError);
  }

  auto collect = [&](CLI::App* sub) {
    if (sub->count("--seed")) opts.seed = seed;
    if (sub->get_option_no_throw("--trials") && sub->count("--trials")) opts.trials = trials;
    if (sub->get_option_no_throw("--backend") && sub->count("--backend")) opts.backend = backend;
    if (sub->count("--output")) opts.output = output;
  };
  if (solve->parsed()) {
    collect(solve);
    return cmd_solve(problem, opts, out, err);
  }
  if (aut->parsed()) {
    collect(aut);
    return cmd_solve(problem, opts, out, err, io::Task::decompose_aut);
  }
  if (der->parsed()) {
    collect(der);
    return cmd_solve(problem, opts, out, err, io::Task::derivation);
  }
  if (flip->parsed()) {
    collect(flip);
    return cmd_solve(problem, opts, out, err, io::Task::flip_check);
  }
  if (re->parsed()) return cmd_recheck(problem, certificate, out, err);
  if (dem->parsed()) {
    collect(dem);
    return cmd_demo(demo, opts, out, err);
  }
  if (sch->parsed()) return cmd_schema(schema, out, err);
  return kInputError;
}

}  // namespace snforge::cli
