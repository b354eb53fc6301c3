//===- rule_parser.cpp - `.crule` front end -------------------------------===//

#include "errchain/errors.hpp"
#include "errchain/rule_spec.hpp"
#include "lexer.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace errchain {

using detail::Token;
using detail::TokenCursor;
using detail::TokenKind;

namespace {

constexpr std::string_view kWildcard = "_";

const std::set<std::string, std::less<>> kSectionKeywords = {
    "SPEC",        "OBJECTS",  "EVENTS",  "ORDER",
    "FORBIDDEN",   "CONSTRAINTS", "REQUIRES", "ENSURES"};

class RuleParser {
public:
  explicit RuleParser(const RuleDocument &doc)
      : cur_(detail::tokenize(doc.text, doc.name), doc.name) {}

  RuleSpec parse() {
    if (!cur_.is_ident("SPEC"))
      cur_.fail(cur_.peek(), "expected 'SPEC'");
    cur_.next();
    rule_.class_name = cur_.expect_ident("class name").text;

    bool saw_section = false;
    bool saw_order = false;
    while (!cur_.at_end()) {
      const Token &kw = cur_.peek();
      if (kw.kind != TokenKind::Ident || !kSectionKeywords.contains(kw.text) ||
          kw.text == "SPEC")
        cur_.fail(kw, "expected a section keyword");
      cur_.next();
      saw_section = true;
      if (kw.text == "OBJECTS") {
        parse_objects();
      } else if (kw.text == "EVENTS") {
        parse_events();
      } else if (kw.text == "ORDER") {
        if (saw_order)
          cur_.fail(kw, "duplicate ORDER section");
        saw_order = true;
        rule_.order = parse_order();
        cur_.expect_punct(";");
      } else if (kw.text == "FORBIDDEN") {
        parse_forbidden();
      } else if (kw.text == "CONSTRAINTS") {
        while (!at_section_end()) {
          rule_.constraints.push_back(parse_constraint());
          cur_.expect_punct(";");
        }
      } else if (kw.text == "REQUIRES") {
        parse_requires();
      } else if (kw.text == "ENSURES") {
        parse_ensures();
      }
    }
    if (!saw_section)
      cur_.fail(cur_.peek(), "expected at least one section");
    if (!saw_order)
      throw RuleError(cur_.source() + ": rule " + rule_.class_name +
                      " has no ORDER section");
    return std::move(rule_);
  }

private:
  bool at_section_end() const {
    const Token &tok = cur_.peek();
    return tok.kind == TokenKind::End ||
           (tok.kind == TokenKind::Ident && kSectionKeywords.contains(tok.text));
  }

  void parse_objects() {
    while (!at_section_end()) {
      ObjectDecl decl;
      decl.type_name = cur_.expect_ident("type name").text;
      decl.name = cur_.expect_ident("object name").text;
      cur_.expect_punct(";");
      rule_.objects.push_back(std::move(decl));
    }
  }

  void parse_events() {
    while (!at_section_end()) {
      std::string label = cur_.expect_ident("event label").text;
      if (cur_.accept_punct(":=")) {
        Aggregate agg;
        agg.label = std::move(label);
        agg.members.push_back(cur_.expect_ident("label").text);
        if (!cur_.is_punct("|"))
          cur_.fail(cur_.peek(), "aggregate needs at least two members; "
                                 "expected '|'");
        while (cur_.accept_punct("|"))
          agg.members.push_back(cur_.expect_ident("label").text);
        cur_.expect_punct(";");
        rule_.aggregates.push_back(std::move(agg));
        continue;
      }
      cur_.expect_punct(":");
      EventDef ev;
      ev.label = std::move(label);
      ev.method = cur_.expect_ident("method name").text;
      cur_.expect_punct("(");
      if (!cur_.is_punct(")")) {
        ev.params.push_back(cur_.expect_ident("parameter name").text);
        while (cur_.accept_punct(","))
          ev.params.push_back(cur_.expect_ident("parameter name").text);
      }
      cur_.expect_punct(")");
      cur_.expect_punct(";");
      rule_.events.push_back(std::move(ev));
    }
  }

  // orderExpr := alt ("," alt)*
  OrderExpr parse_order() {
    std::vector<OrderExpr> items;
    items.push_back(parse_alt());
    while (cur_.accept_punct(","))
      items.push_back(parse_alt());
    if (items.size() == 1)
      return std::move(items.front());
    return {OrderExpr::Kind::Sequence, {}, std::move(items)};
  }

  // alt := rep ("|" rep)*
  OrderExpr parse_alt() {
    std::vector<OrderExpr> items;
    items.push_back(parse_rep());
    while (cur_.accept_punct("|"))
      items.push_back(parse_rep());
    if (items.size() == 1)
      return std::move(items.front());
    return {OrderExpr::Kind::Alternation, {}, std::move(items)};
  }

  // rep := atom ["*" | "+" | "?"]
  OrderExpr parse_rep() {
    OrderExpr atom = parse_atom();
    OrderExpr::Kind kind;
    if (cur_.accept_punct("*"))
      kind = OrderExpr::Kind::Star;
    else if (cur_.accept_punct("+"))
      kind = OrderExpr::Kind::Plus;
    else if (cur_.accept_punct("?"))
      kind = OrderExpr::Kind::Optional;
    else
      return atom;
    std::vector<OrderExpr> child;
    child.push_back(std::move(atom));
    return {kind, {}, std::move(child)};
  }

  OrderExpr parse_atom() {
    if (cur_.accept_punct("(")) {
      OrderExpr inner = parse_order();
      cur_.expect_punct(")");
      return inner;
    }
    return OrderExpr::leaf(cur_.expect_ident("event label").text);
  }

  void parse_forbidden() {
    while (!at_section_end()) {
      ForbiddenMethod fm;
      fm.method = cur_.expect_ident("method name").text;
      cur_.expect_punct("/");
      const Token &arity = cur_.expect_kind(TokenKind::Integer, "arity");
      if (arity.number < 0)
        cur_.fail(arity, "arity must be non-negative");
      fm.arity = static_cast<int>(arity.number);
      cur_.expect_punct(";");
      rule_.forbidden.push_back(std::move(fm));
    }
  }

  Literal parse_literal() {
    const Token &tok = cur_.peek();
    if (tok.kind == TokenKind::String) {
      cur_.next();
      return Literal::string(tok.text);
    }
    if (tok.kind == TokenKind::Integer) {
      cur_.next();
      return Literal::integer(tok.number);
    }
    cur_.fail(tok, "expected a literal");
  }

  bool at_value_condition() const {
    return cur_.peek().kind == TokenKind::Ident &&
           (cur_.is_ident("in", 1) || cur_.is_punct("==", 1));
  }

  ValueCondition parse_value_condition() {
    ValueCondition cond;
    cond.param = cur_.expect_ident("parameter name").text;
    if (cur_.accept_punct("==")) {
      cond.equality = true;
      cond.values.push_back(parse_literal());
      return cond;
    }
    if (!cur_.is_ident("in"))
      cur_.fail(cur_.peek(), "expected 'in' or '=='");
    cur_.next();
    cur_.expect_punct("{");
    cond.values.push_back(parse_literal());
    while (cur_.accept_punct(","))
      cond.values.push_back(parse_literal());
    cur_.expect_punct("}");
    return cond;
  }

  ConstraintExpr parse_constraint() {
    ConstraintExpr expr;
    for (;;) {
      if (cur_.is_ident("neverTypeOf") && cur_.is_punct("(", 1)) {
        cur_.next();
        cur_.next();
        NeverTypeOf n;
        n.param = cur_.expect_ident("parameter name").text;
        cur_.expect_punct(",");
        n.type_name = cur_.expect_ident("type name").text;
        cur_.expect_punct(")");
        expr.body = std::move(n);
        return expr;
      }
      if (cur_.is_ident("notHardCoded") && cur_.is_punct("(", 1)) {
        cur_.next();
        cur_.next();
        NotHardCoded n;
        n.param = cur_.expect_ident("parameter name").text;
        cur_.expect_punct(")");
        expr.body = std::move(n);
        return expr;
      }
      if (!at_value_condition())
        cur_.fail(cur_.peek(), "expected a constraint");
      ValueCondition cond = parse_value_condition();
      if (!cur_.accept_punct("=>")) {
        expr.body = std::move(cond);
        return expr;
      }
      expr.guards.push_back(std::move(cond));
    }
  }

  void parse_requires() {
    while (!at_section_end()) {
      RequiredPredicateSpec req;
      if (at_value_condition()) {
        req.guard = parse_value_condition();
        cur_.expect_punct("=>");
      }
      req.predicate = cur_.expect_ident("predicate name").text;
      cur_.expect_punct("[");
      req.param = cur_.expect_ident("parameter name").text;
      cur_.expect_punct("]");
      cur_.expect_punct(";");
      rule_.required.push_back(std::move(req));
    }
  }

  void parse_ensures() {
    while (!at_section_end()) {
      EnsuredPredicateSpec ens;
      ens.predicate = cur_.expect_ident("predicate name").text;
      cur_.expect_punct("[");
      std::string target = cur_.expect_ident("target").text;
      if (target == "this") {
        ens.target.kind = EnsureTarget::Kind::This;
      } else if (target == "return") {
        ens.target.kind = EnsureTarget::Kind::Return;
      } else {
        ens.target.kind = EnsureTarget::Kind::Param;
        ens.target.param = std::move(target);
      }
      cur_.expect_punct("]");
      if (cur_.is_ident("after")) {
        cur_.next();
        ens.after_label = cur_.expect_ident("event label").text;
      }
      cur_.expect_punct(";");
      rule_.ensured.push_back(std::move(ens));
    }
  }

  TokenCursor cur_;
  RuleSpec rule_;
};

class RuleValidator {
public:
  RuleValidator(const RuleSpec &rule, const std::string &source)
      : rule_(rule), source_(source) {}

  void run() {
    std::set<std::string> names;
    for (const auto &obj : rule_.objects)
      if (!names.insert(obj.name).second)
        fail("object '" + obj.name + "' declared twice");

    std::set<std::string> labels;
    for (const auto &ev : rule_.events) {
      if (!labels.insert(ev.label).second)
        fail("label '" + ev.label + "' declared twice");
      for (const auto &p : ev.params)
        check_param(p, "event " + ev.label);
    }
    for (const auto &agg : rule_.aggregates)
      if (!labels.insert(agg.label).second)
        fail("label '" + agg.label + "' declared twice");
    for (const auto &agg : rule_.aggregates)
      for (const auto &m : agg.members)
        if (!labels.contains(m))
          fail("aggregate " + agg.label + " references unknown label '" + m +
               "'");
    check_aggregates_acyclic();
    check_order(rule_.order);

    for (const auto &c : rule_.constraints) {
      for (const auto &g : c.guards)
        check_param(g.param, "constraint guard");
      check_param(c.param(), "constraint");
    }
    for (const auto &req : rule_.required) {
      check_param(req.param, "requirement " + req.predicate);
      if (req.param == kWildcard)
        fail("requirement " + req.predicate + " cannot target '_'");
      if (!bound_by_event(req.param))
        fail("required parameter '" + req.param +
             "' does not appear in any event");
      if (req.guard)
        check_param(req.guard->param, "requirement guard");
    }
    for (const auto &ens : rule_.ensured) {
      if (ens.target.kind == EnsureTarget::Kind::Param)
        check_param(ens.target.param, "ensured predicate " + ens.predicate);
      if (ens.after_label && !labels.contains(*ens.after_label))
        fail("ensured predicate " + ens.predicate +
             " refers to unknown label '" + *ens.after_label + "'");
    }
  }

private:
  [[noreturn]] void fail(const std::string &message) const {
    throw RuleError(source_ + ": rule " + rule_.class_name + ": " + message);
  }

  void check_param(const std::string &name, const std::string &where) const {
    if (name == kWildcard)
      return;
    if (!rule_.find_object(name))
      fail("undeclared parameter '" + name + "' in " + where);
  }

  bool bound_by_event(const std::string &name) const {
    return std::any_of(rule_.events.begin(), rule_.events.end(),
                       [&](const EventDef &ev) {
                         return std::find(ev.params.begin(), ev.params.end(),
                                          name) != ev.params.end();
                       });
  }

  void check_aggregates_acyclic() const {
    std::set<std::string> done;
    std::vector<std::string> stack;
    std::function<void(const Aggregate &)> visit = [&](const Aggregate &agg) {
      if (done.contains(agg.label))
        return;
      if (std::find(stack.begin(), stack.end(), agg.label) != stack.end())
        fail("aggregate " + agg.label + " is recursive");
      stack.push_back(agg.label);
      for (const auto &m : agg.members)
        if (const Aggregate *inner = rule_.find_aggregate(m))
          visit(*inner);
      stack.pop_back();
      done.insert(agg.label);
    };
    for (const auto &agg : rule_.aggregates)
      visit(agg);
  }

  void check_order(const OrderExpr &expr) const {
    if (expr.kind == OrderExpr::Kind::Label) {
      if (!rule_.find_event(expr.label) && !rule_.find_aggregate(expr.label))
        fail("ORDER references unresolvable label '" + expr.label + "'");
      return;
    }
    for (const auto &child : expr.children)
      check_order(child);
  }

  const RuleSpec &rule_;
  const std::string &source_;
};

void print_order_into(std::ostringstream &out, const OrderExpr &expr,
                      bool parenthesize) {
  using Kind = OrderExpr::Kind;
  switch (expr.kind) {
  case Kind::Label:
    out << expr.label;
    return;
  case Kind::Star:
  case Kind::Plus:
  case Kind::Optional: {
    const OrderExpr &child = expr.children.front();
    print_order_into(out, child, child.kind != Kind::Label);
    out << (expr.kind == Kind::Star ? "*" : expr.kind == Kind::Plus ? "+" : "?");
    return;
  }
  case Kind::Sequence:
  case Kind::Alternation: {
    if (parenthesize)
      out << "(";
    const char *sep = expr.kind == Kind::Sequence ? ", " : " | ";
    for (std::size_t i = 0; i < expr.children.size(); ++i) {
      if (i)
        out << sep;
      const OrderExpr &child = expr.children[i];
      bool wrap = expr.kind == Kind::Sequence
                      ? child.kind == Kind::Sequence
                      : child.kind == Kind::Sequence ||
                            child.kind == Kind::Alternation;
      print_order_into(out, child, wrap);
    }
    if (parenthesize)
      out << ")";
    return;
  }
  }
}

} // namespace

bool ValueCondition::holds_for(const Literal &value) const {
  return std::find(values.begin(), values.end(), value) != values.end();
}

const std::string &ConstraintExpr::param() const {
  return std::visit([](const auto &b) -> const std::string & { return b.param; },
                    body);
}

const EventDef *RuleSpec::find_event(std::string_view label) const {
  for (const auto &ev : events)
    if (ev.label == label)
      return &ev;
  return nullptr;
}

const Aggregate *RuleSpec::find_aggregate(std::string_view label) const {
  for (const auto &agg : aggregates)
    if (agg.label == label)
      return &agg;
  return nullptr;
}

const ObjectDecl *RuleSpec::find_object(std::string_view name) const {
  for (const auto &obj : objects)
    if (obj.name == name)
      return &obj;
  return nullptr;
}

std::vector<std::string> RuleSpec::expand_label(std::string_view label) const {
  std::vector<std::string> out;
  std::function<void(std::string_view, int)> expand = [&](std::string_view l,
                                                          int depth) {
    if (depth > static_cast<int>(aggregates.size()) + 1)
      return;
    if (find_event(l)) {
      if (std::find(out.begin(), out.end(), l) == out.end())
        out.emplace_back(l);
      return;
    }
    if (const Aggregate *agg = find_aggregate(l))
      for (const auto &m : agg->members)
        expand(m, depth + 1);
  };
  expand(label, 0);
  return out;
}

bool RuleSpec::is_forbidden(std::string_view method, int arity) const {
  return std::any_of(forbidden.begin(), forbidden.end(),
                     [&](const ForbiddenMethod &f) {
                       return f.method == method && f.arity == arity;
                     });
}

bool RuleSpec::has_constructor_event() const {
  return std::any_of(events.begin(), events.end(), [&](const EventDef &ev) {
    return ev.method == class_name;
  });
}

RuleSpec parse_rule(const RuleDocument &document) {
  RuleSpec rule = RuleParser(document).parse();
  RuleValidator(rule, document.name).run();
  return rule;
}

std::vector<RuleSpec> parse_rules(const std::vector<RuleDocument> &documents) {
  std::vector<RuleSpec> rules;
  std::set<std::string> classes;
  for (const auto &doc : documents) {
    RuleSpec rule = parse_rule(doc);
    if (!classes.insert(rule.class_name).second)
      throw RuleError(doc.name + ": duplicate rule for class " +
                      rule.class_name);
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::string print_order(const OrderExpr &order) {
  std::ostringstream out;
  print_order_into(out, order, false);
  return out.str();
}

std::string print_condition(const ValueCondition &cond) {
  std::string out = cond.param;
  if (cond.equality)
    return out + " == " + cond.values.front().spelling();
  out += " in {";
  for (std::size_t i = 0; i < cond.values.size(); ++i) {
    if (i)
      out += ", ";
    out += cond.values[i].spelling();
  }
  return out + "}";
}

std::string print_rule(const RuleSpec &rule) {
  std::ostringstream out;
  out << "SPEC " << rule.class_name << "\n";
  if (!rule.objects.empty()) {
    out << "OBJECTS\n";
    for (const auto &obj : rule.objects)
      out << "  " << obj.type_name << " " << obj.name << ";\n";
  }
  if (!rule.events.empty() || !rule.aggregates.empty()) {
    out << "EVENTS\n";
    for (const auto &ev : rule.events) {
      out << "  " << ev.label << ": " << ev.method << "(";
      for (std::size_t i = 0; i < ev.params.size(); ++i)
        out << (i ? ", " : "") << ev.params[i];
      out << ");\n";
    }
    for (const auto &agg : rule.aggregates) {
      out << "  " << agg.label << " := ";
      for (std::size_t i = 0; i < agg.members.size(); ++i)
        out << (i ? " | " : "") << agg.members[i];
      out << ";\n";
    }
  }
  out << "ORDER\n  " << print_order(rule.order) << ";\n";
  if (!rule.forbidden.empty()) {
    out << "FORBIDDEN\n";
    for (const auto &f : rule.forbidden)
      out << "  " << f.method << "/" << f.arity << ";\n";
  }
  if (!rule.constraints.empty()) {
    out << "CONSTRAINTS\n";
    for (const auto &c : rule.constraints) {
      out << "  ";
      for (const auto &g : c.guards)
        out << print_condition(g) << " => ";
      std::visit(
          [&](const auto &b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ValueCondition>)
              out << print_condition(b);
            else if constexpr (std::is_same_v<T, NeverTypeOf>)
              out << "neverTypeOf(" << b.param << ", " << b.type_name << ")";
            else
              out << "notHardCoded(" << b.param << ")";
          },
          c.body);
      out << ";\n";
    }
  }
  if (!rule.required.empty()) {
    out << "REQUIRES\n";
    for (const auto &req : rule.required) {
      out << "  ";
      if (req.guard)
        out << print_condition(*req.guard) << " => ";
      out << req.predicate << "[" << req.param << "];\n";
    }
  }
  if (!rule.ensured.empty()) {
    out << "ENSURES\n";
    for (const auto &ens : rule.ensured) {
      out << "  " << ens.predicate << "[";
      switch (ens.target.kind) {
      case EnsureTarget::Kind::This:
        out << "this";
        break;
      case EnsureTarget::Kind::Return:
        out << "return";
        break;
      case EnsureTarget::Kind::Param:
        out << ens.target.param;
        break;
      }
      out << "]";
      if (ens.after_label)
        out << " after " << *ens.after_label;
      out << ";\n";
    }
  }
  return out.str();
}

} // namespace errchain
