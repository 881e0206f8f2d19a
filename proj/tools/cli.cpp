#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dist235/cartan.hpp"
#include "dist235/model.hpp"

using namespace dist235;
using ojson = nlohmann::ordered_json;

namespace {

enum ExitCode { kPass = 0, kVerdictFailed = 1, kInputError = 2, kDegenerate = 3 };

constexpr const char* kReportSchema = "distribution-report/1";

struct Options {
  std::string command;
  std::string model;
  std::vector<std::string> points;
  int order = 0;
  int tau_order = 0;
  std::string mode = "adapted";
  std::string output;
  std::string format = "json";
  bool timings = false;
};

ojson rationals(std::span<const Rational> v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_pq_string(x));
  return a;
}

/// Coefficients of a homogeneous fiber polynomial of degree d, u4^d first.
std::vector<RationalFunction> binary_coefficients(const FiberPolynomial& f, int d) {
  std::vector<RationalFunction> c;
  for (int k = 0; k <= d; ++k) c.push_back(f.coefficient45(d - k, k));
  return c;
}

class Session {
 public:
  Session(ModelSpec model, Options opt) : m_(std::move(model)), o_(std::move(opt)) {
    if (o_.order > 0) m_.orders.t_order = o_.order;
    if (o_.tau_order > 0) m_.orders.tau_order = o_.tau_order;
  }

  ojson run() {
    ojson r;
    r["schema"] = kReportSchema;
    r["command"] = command_echo();
    r["model"] = {{"name", m_.name},
                  {"fingerprint", m_.fingerprint},
                  {"coordinates", m_.coordinates},
                  {"X1", m_.field_text[0]},
                  {"X2", m_.field_text[1]}};
    if (m_.monge) r["model"]["monge"] = *m_.monge;

    const std::string& c = o_.command;
    bool all = c == "report";
    if (c == "cartan" && !m_.coframe) throw InputError("the model has no coframe; the cartan command needs one");
    if (c != "check" && c != "cartan") symbolic(r, c == "frame" || all, c == "invariants" || all);
    if (m_.coframe && (c == "cartan" || all)) cartan_summary(r);
    if (!m_.coframe && all) r["cartan"] = {{"skipped", "the model has no coframe"}};

    ojson pts = ojson::array();
    for (const auto& p : m_.points) pts.push_back(point(p));
    r["points"] = std::move(pts);
    r["verdict"] = degenerate_ ? "degenerate" : failed_ ? "fail" : "pass";
    r["exit_code"] = exit_code();
    return r;
  }

  int exit_code() const {
    if (degenerate_) return kDegenerate;
    return failed_ ? kVerdictFailed : kPass;
  }

  struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

 private:
  ojson command_echo() const {
    ojson e = {{"subcommand", o_.command},
               {"model", o_.model},
               {"mode", o_.mode},
               {"orders", {{"t", m_.orders.t_order}, {"tau", m_.orders.tau_order}}}};
    if (!o_.points.empty()) e["points"] = o_.points;
    return e;
  }

  std::string expr(const RationalFunction& f) const { return to_string(f, m_.coordinates); }

  ojson exprs(const std::vector<RationalFunction>& v) const {
    ojson a = ojson::array();
    for (const auto& f : v) a.push_back(expr(f));
    return a;
  }

  void symbolic(ojson& r, bool with_frame, bool with_invariants) {
    AdaptedMode mode = o_.mode == "strongly-adapted" ? AdaptedMode::StronglyAdapted : AdaptedMode::Adapted;
    try {
      frame_ = adapted_frame(m_.x1, m_.x2, mode);
      sf_.emplace(structural_functions(*frame_));
      if (with_frame) r["frame"] = frame_json();
      AbnormalData d = abnormal_data(*frame_, *sf_);
      rho_ = ricci_density(d);
      a_ = fundamental_density(d);
    } catch (const DegeneracyError& e) {
      r["errors"].push_back({{"kind", "degenerate"}, {"message", e.what()}});
      degenerate_ = true;
      frame_.reset();
      return;
    }
    if (with_invariants) {
      r["invariants"] = {{"rho", exprs(binary_coefficients(*rho_, 2))},
                         {"A", exprs(binary_coefficients(*a_, 4))},
                         {"monomials", {{"rho", "u4^2, u4*u5, u5^2"}, {"A", "u4^4, u4^3*u5, ..., u5^4"}}},
                         {"homogeneous",
                          {{"rho", rho_->is_homogeneous(2) && !rho_->involves_u123()},
                           {"A", a_->is_homogeneous(4) && !a_->involves_u123()}}}};
    }
  }

  ojson frame_json() const {
    ojson fields;
    for (std::size_t k = 0; k < frame_->fields.size(); ++k) {
      std::vector<RationalFunction> c(frame_->fields[k].components());
      fields["X" + std::to_string(k + 1)] = exprs(c);
    }
    ojson table = ojson::array();
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 5; ++j)
        for (int k = 1; k <= 5; ++k) {
          const RationalFunction& v = (*sf_)(j, i, k);
          if (v.is_zero()) continue;
          table.push_back({{"bracket", "[X" + std::to_string(i) + ",X" + std::to_string(j) + "]"},
                           {"component", "X" + std::to_string(k)},
                           {"value", expr(v)}});
        }
    return {{"mode", frame_tag_name(frame_->tag)}, {"fields", fields}, {"structural_functions", table}};
  }

  void cartan_summary(ojson& r) {
    const CartanCoframe& cf = m_.coframe->coframe;
    ojson s;
    StructureCheck check = verify_structure_equations(cf);
    s["structure_equations"] = {{"ok", check.ok()}, {"failing", check.failing()}};
    if (!check.ok()) {
      failed_ = true;
      r["cartan"] = s;
      return;
    }
    try {
      cartan_frame_ = cartan_frame(cf);
      StructuralFunctions c = structural_functions(*cartan_frame_);
      AbnormalData d = abnormal_data(*cartan_frame_, c);
      CartanIdentities id = cartan_identities(cf, *cartan_frame_, d);
      density_ = density_simplified(cf);
      s["identities"] = {{"b_from_forms", id.b_matches()}, {"b1_equals_b", id.b1_equals_b()},
                         {"pi_equals_minus_4_3_alpha3", id.pi_relation()}};
      s["density"] = {{"cancellation", density_->cancellation()},
                      {"theta_decomposition", density_->theta_route()},
                      {"difference_is_xi", density_->difference()},
                      {"A_cartan", exprs(std::vector<RationalFunction>(density_->a.begin(), density_->a.end()))}};
      if (!id.ok() || !density_->cancellation() || !density_->theta_route() || !density_->difference()) failed_ = true;
    } catch (const DegeneracyError& e) {
      s["error"] = {{"kind", "degenerate"}, {"message", e.what()}};
      degenerate_ = true;
      cartan_frame_.reset();
      density_.reset();
    }
    r["cartan"] = s;
  }

  ojson point(const WorkingPoint& p) {
    auto t0 = std::chrono::steady_clock::now();
    ojson out;
    out["q"] = rationals(p.q);
    const std::string& c = o_.command;
    bool all = c == "report";
    try {
      GrowthVector g = growth_vector(m_.x1, m_.x2, p.q);
      out["growth"] = g.str();
      if (!g.is_235()) {
        degenerate_ = true;
        out["error"] = {{"kind", "degenerate"}, {"message", "growth vector " + g.str() + ", expected (2,3,5)"}};
        return out;
      }
      if ((c == "frame" || all) && frame_) {
        frame_->check_invertible_at(p.q);
        ojson at;
        for (std::size_t k = 0; k < 5; ++k) at["X" + std::to_string(k + 1)] = rationals(frame_->fields[k].evaluate(p.q));
        out["frame"] = at;
      }
      if ((c == "invariants" || all) && a_) out["invariants"] = invariants_at(p);
      if ((c == "tangential" || all) && a_) out["tangential"] = tangential_at(p);
      if ((c == "oracle" || all) && frame_) out["oracle"] = oracle_at(p);
      if ((c == "cartan" || all) && cartan_frame_ && density_) out["cartan"] = cartan_at(p);
    } catch (const PoleError& e) {
      degenerate_ = true;
      out["error"] = {{"kind", "pole"}, {"message", e.what()}};
    } catch (const DegeneracyError& e) {
      degenerate_ = true;
      out["error"] = {{"kind", "degenerate"}, {"message", e.what()}};
    }
    if (o_.timings)
      out["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }

  static std::vector<Rational> fiber(const std::array<Rational, 2>& u) {
    return {Rational(0), Rational(0), Rational(0), u[0], u[1]};
  }

  ojson invariants_at(const WorkingPoint& p) const {
    std::vector<Rational> rho, a;
    for (const auto& f : binary_coefficients(*rho_, 2)) rho.push_back(f.evaluate(p.q));
    for (const auto& f : binary_coefficients(*a_, 4)) a.push_back(f.evaluate(p.q));
    ojson values = ojson::array();
    for (const auto& u : p.u) {
      auto uu = fiber(u);
      values.push_back({{"u", rationals(u)},
                        {"rho", to_pq_string(rho_->evaluate(p.q, uu))},
                        {"A", to_pq_string(a_->evaluate(p.q, uu))}});
    }
    return {{"rho", rationals(rho)}, {"A", rationals(a)}, {"values", values}};
  }

  ojson tangential_at(const WorkingPoint& p) const {
    QuarticForm t = tangential_form(*a_, p.q);
    return {{"basis", t.basis}, {"monomials", "v1^4, v1^3*v2, v1^2*v2^2, v1*v2^3, v2^4"}, {"coefficients", rationals(t.c)}};
  }

  ojson oracle_at(const WorkingPoint& p) {
    ojson list = ojson::array();
    for (const auto& u : p.u) {
      auto uu = fiber(u);
      Rational rho_f = rho_->evaluate(p.q, uu), a_f = a_->evaluate(p.q, uu);
      OracleReport o = run_oracle(*frame_, CovectorPoint{p.q, u[0], u[1]}, m_.orders);
      bool equal = o.consistent() && o.rho() == rho_f && o.a() == a_f;
      if (!equal) failed_ = true;
      ojson issues = o.issues;
      list.push_back({{"u", rationals(u)},
                      {"formula", {{"rho", to_pq_string(rho_f)}, {"A", to_pq_string(a_f)}}},
                      {"oracle",
                       {{"rho", to_pq_string(o.rho())},
                        {"A", to_pq_string(o.a())},
                        {"paths",
                         {{"derivative_curve", {{"rho", to_pq_string(o.rho_frame)}, {"A", to_pq_string(o.a_frame)}}},
                          {"moving_frame", {{"rho", to_pq_string(o.rho_moving)}, {"A", to_pq_string(o.a_moving)}}},
                          {"projective", {{"rho", to_pq_string(o.rho_g)}, {"A", to_pq_string(o.a_projective)}}}}},
                        {"weight", o.weight},
                        {"velocity_rank", o.velocity_rank},
                        {"velocity_sign", o.velocity_sign},
                        {"issues", issues}}},
                      {"verdict", equal ? "equal" : "unequal"}});
    }
    return list;
  }

  ojson cartan_at(const WorkingPoint& p) {
    QuarticReport r = compare_theorem(*density_, *cartan_frame_, p.q);
    if (!r.ok()) failed_ = true;
    return {{"A", rationals(r.a)},
            {"F", rationals(r.cartan.c)},
            {"tangential", rationals(r.tangential.c)},
            {"residual", rationals(r.residual)},
            {"verdict", r.ok() ? "F = -35 A" : "mismatch"}};
  }

  ModelSpec m_;
  Options o_;
  std::optional<Frame> frame_, cartan_frame_;
  std::optional<StructuralFunctions> sf_;
  std::optional<FiberPolynomial> rho_, a_;
  std::optional<CartanDensity> density_;
  bool failed_ = false, degenerate_ = false;
};

void flatten(const ojson& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_array()) {
    out << prefix << " =";
    for (const auto& v : j) out << ' ' << (v.is_string() ? v.get<std::string>() : v.dump());
    out << '\n';
  } else {
    out << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> q;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
    q.push_back(parse_rational(b == std::string::npos ? "" : item.substr(b, e - b + 1)));
  }
  if (q.size() != 5) throw ParseError("--point needs 5 comma-separated rationals, got " + std::to_string(q.size()), 0);
  return q;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of (2,3,5) distributions: growth, adapted frames, the fundamental form, "
               "the Jacobi-curve oracle and Cartan's quartic."};
  app.require_subcommand(1, 1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"check", "growth vector at each working point"},
      {"frame", "adapted frame and its structural functions"},
      {"invariants", "rho and A as fiber polynomials and at the working points"},
      {"tangential", "tangential fundamental form at the working points"},
      {"oracle", "formula pipeline against the Jacobi-curve oracle"},
      {"cartan", "coframe verifier, Cartan identities and F = -35 A"},
      {"report", "everything above"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--model", o.model, "model file (distribution-model/1 JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--point", o.points, "working point x1,...,x5 (rationals); repeatable; replaces the model's points");
    sub->add_option("--order", o.order, "t-jet order of the oracle (default 12)")->check(CLI::Range(4, 64));
    sub->add_option("--tau-order", o.tau_order, "tau-jet order of the oracle (default 5)")->check(CLI::Range(1, 64));
    sub->add_option("--mode", o.mode, "frame construction")->check(CLI::IsMember({"adapted", "strongly-adapted"}));
    sub->add_option("--output", o.output, "write the report here instead of stdout");
    sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--timings", o.timings, "add wall-clock timings (makes the report nondeterministic)");
    sub->callback([&o, sub] { o.command = sub->get_name(); });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  std::optional<Session> session;
  try {
    std::vector<WorkingPoint> overrides;
    for (const auto& s : o.points) {
      try {
        overrides.push_back({parse_point(s), {{Rational(0), Rational(1)}, {Rational(1), Rational(1)}}});
      } catch (const Error& e) {
        std::cerr << "error: --point " << s << ": " << e.what() << '\n';
        return kInputError;
      }
    }
    ModelSpec m = load_model(o.model);
    if (!overrides.empty()) m.points = std::move(overrides);
    session.emplace(std::move(m), o);
  } catch (const Error& e) {
    std::cerr << "error: " << o.model << ": " << e.what() << '\n';
    return kInputError;
  }

  ojson report;
  try {
    report = session->run();
  } catch (const Session::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDegenerate;
  }

  std::ostringstream text;
  if (o.format == "json") {
    text << report.dump(2) << '\n';
  } else {
    flatten(report, "", text);
  }
  if (o.output.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << o.output << '\n';
      return kInputError;
    }
    out << text.str();
  }
  return session->exit_code();
}
