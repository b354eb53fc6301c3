//===- program_parser.cpp - `.mprog` front end ----------------------------===//

#include "errchain/errors.hpp"
#include "errchain/program.hpp"
#include "lexer.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace errchain {

using detail::Token;
using detail::TokenCursor;
using detail::TokenKind;

namespace {

const std::set<std::string, std::less<>> kKeywords = {"fun", "return", "if",
                                                      "else", "new", "bytes"};

class ProgramParser {
public:
  ProgramParser(std::string_view text, const std::string &file)
      : cur_(detail::tokenize(text, file), file) {
    program_.file = file;
  }

  Program parse() {
    while (!cur_.at_end())
      parse_function();
    return std::move(program_);
  }

private:
  int reserve_statement(const Token &at) {
    program_.statement_lines.push_back(at.line);
    return static_cast<int>(program_.statement_lines.size());
  }

  std::string expect_variable(std::string_view what) {
    const Token &tok = cur_.expect_ident(what);
    if (detail::starts_upper(tok.text) || kKeywords.contains(tok.text))
      cur_.fail(tok, "expected " + std::string(what));
    return tok.text;
  }

  std::string expect_type(std::string_view what) {
    const Token &tok = cur_.expect_ident(what);
    if (!detail::starts_upper(tok.text))
      cur_.fail(tok, "expected " + std::string(what) +
                         " (type names start upper-case)");
    return tok.text;
  }

  void parse_function() {
    if (!cur_.is_ident("fun"))
      cur_.fail(cur_.peek(), "expected 'fun'");
    const Token &kw = cur_.next();
    FunctionDef fn;
    fn.line = kw.line;
    fn.name = expect_variable("function name");
    cur_.expect_punct("(");
    if (!cur_.is_punct(")")) {
      fn.params.push_back(expect_variable("parameter name"));
      while (cur_.accept_punct(","))
        fn.params.push_back(expect_variable("parameter name"));
    }
    cur_.expect_punct(")");
    fn.body = parse_block();
    if (program_.functions.contains(fn.name))
      throw ProgramError(program_.file + ":" + std::to_string(fn.line) +
                         ": duplicate function '" + fn.name + "'");
    std::string name = fn.name;
    program_.functions.emplace(std::move(name), std::move(fn));
  }

  Block parse_block() {
    cur_.expect_punct("{");
    Block block;
    while (!cur_.is_punct("}")) {
      if (cur_.at_end())
        cur_.fail(cur_.peek(), "expected '}'");
      block.push_back(parse_statement());
    }
    cur_.expect_punct("}");
    return block;
  }

  Arg parse_arg() {
    const Token &tok = cur_.peek();
    if (tok.kind == TokenKind::String || tok.kind == TokenKind::Integer ||
        cur_.is_ident("bytes"))
      return parse_literal();
    return expect_variable("argument");
  }

  std::vector<Arg> parse_args() {
    cur_.expect_punct("(");
    std::vector<Arg> args;
    if (!cur_.is_punct(")")) {
      args.push_back(parse_arg());
      while (cur_.accept_punct(","))
        args.push_back(parse_arg());
    }
    cur_.expect_punct(")");
    return args;
  }

  Literal parse_literal() {
    const Token &tok = cur_.next();
    if (tok.kind == TokenKind::String)
      return Literal::string(tok.text);
    if (tok.kind == TokenKind::Integer)
      return Literal::integer(tok.number);
    if (tok.kind == TokenKind::Ident && tok.text == "bytes") {
      cur_.expect_punct("(");
      const Token &s = cur_.expect_kind(TokenKind::String, "string literal");
      cur_.expect_punct(")");
      return Literal::bytes(s.text);
    }
    cur_.fail(tok, "expected a literal");
  }

  bool at_literal() const {
    const Token &tok = cur_.peek();
    return tok.kind == TokenKind::String || tok.kind == TokenKind::Integer ||
           (cur_.is_ident("bytes") && cur_.is_punct("(", 1));
  }

  /// Parses a call expression; `target` is the assigned variable or empty.
  Statement parse_call(std::string target, int id, int line) {
    const Token &head = cur_.expect_ident("call");
    if (kKeywords.contains(head.text))
      cur_.fail(head, "expected a call");
    Statement stmt;
    stmt.id = id;
    stmt.line = line;
    if (cur_.accept_punct(".")) {
      std::string method = cur_.expect_ident("method name").text;
      std::vector<Arg> args = parse_args();
      if (detail::starts_upper(head.text))
        stmt.body = StaticCallStmt{std::move(target), head.text,
                                   std::move(method), std::move(args)};
      else
        stmt.body = InstanceCallStmt{std::move(target), head.text,
                                     std::move(method), std::move(args)};
      return stmt;
    }
    if (detail::starts_upper(head.text))
      cur_.fail(head, "expected '.' after type name");
    stmt.body = UserCallStmt{std::move(target), head.text, parse_args()};
    return stmt;
  }

  Statement parse_statement() {
    const Token &first = cur_.peek();
    int line = first.line;

    if (cur_.is_ident("if")) {
      cur_.next();
      Statement stmt;
      stmt.id = reserve_statement(first);
      stmt.line = line;
      BranchStmt br;
      br.then_block = parse_block();
      if (!cur_.is_ident("else"))
        cur_.fail(cur_.peek(), "expected 'else'");
      cur_.next();
      br.else_block = parse_block();
      stmt.body = std::move(br);
      return stmt;
    }

    if (cur_.is_ident("return")) {
      cur_.next();
      Statement stmt;
      stmt.id = reserve_statement(first);
      stmt.line = line;
      stmt.body = ReturnStmt{expect_variable("variable")};
      cur_.expect_punct(";");
      return stmt;
    }

    if (first.kind == TokenKind::Ident && cur_.is_punct("=", 1)) {
      std::string target = expect_variable("variable");
      cur_.expect_punct("=");
      int id = reserve_statement(first);
      Statement stmt;
      stmt.id = id;
      stmt.line = line;
      if (at_literal()) {
        stmt.body = AssignStmt{std::move(target), parse_literal()};
      } else if (cur_.is_ident("new")) {
        cur_.next();
        std::string type = expect_type("type name");
        stmt.body = NewStmt{std::move(target), std::move(type), parse_args()};
      } else if (cur_.peek().kind == TokenKind::Ident &&
                 (cur_.is_punct(".", 1) || cur_.is_punct("(", 1))) {
        stmt = parse_call(std::move(target), id, line);
      } else {
        stmt.body = CopyStmt{std::move(target), expect_variable("expression")};
      }
      cur_.expect_punct(";");
      return stmt;
    }

    int id = reserve_statement(first);
    Statement stmt = parse_call({}, id, line);
    cur_.expect_punct(";");
    return stmt;
  }

  TokenCursor cur_;
  Program program_;
};

[[noreturn]] void fail_at(const Program &p, int line, const std::string &msg) {
  throw ProgramError(p.file + ":" + std::to_string(line) + ": " + msg);
}

void for_each_statement(const Block &block,
                        const std::function<void(const Statement &)> &fn) {
  for (const auto &stmt : block) {
    fn(stmt);
    if (const auto *br = stmt.as<BranchStmt>()) {
      for_each_statement(br->then_block, fn);
      for_each_statement(br->else_block, fn);
    }
  }
}

void check_returns(const Program &p, const FunctionDef &fn) {
  for (std::size_t i = 0; i < fn.body.size(); ++i)
    if (fn.body[i].as<ReturnStmt>() && i + 1 != fn.body.size())
      fail_at(p, fn.body[i].line,
              "return must be the last statement of '" + fn.name + "'");
  for (const auto &stmt : fn.body) {
    if (const auto *br = stmt.as<BranchStmt>()) {
      auto nested = [&](const Statement &s) {
        if (s.as<ReturnStmt>())
          fail_at(p, s.line, "return is not allowed inside a branch");
      };
      for_each_statement(br->then_block, nested);
      for_each_statement(br->else_block, nested);
    }
  }
}

void check_calls(const Program &p, const FunctionDef &fn) {
  for_each_statement(fn.body, [&](const Statement &stmt) {
    const auto *call = stmt.as<UserCallStmt>();
    if (!call)
      return;
    auto it = p.functions.find(call->function);
    if (it == p.functions.end())
      fail_at(p, stmt.line, "call to unknown function '" + call->function + "'");
    if (it->second.params.size() != call->args.size())
      fail_at(p, stmt.line,
              "function '" + call->function + "' expects " +
                  std::to_string(it->second.params.size()) + " argument(s), " +
                  std::to_string(call->args.size()) + " given");
    if (!call->target.empty() && !it->second.returns_value())
      fail_at(p, stmt.line,
              "function '" + call->function + "' does not return a value");
  });
}

void check_recursion(const Program &p) {
  enum class Mark { None, Active, Done };
  std::map<std::string, Mark> marks;
  std::vector<std::string> stack;

  std::function<void(const FunctionDef &)> visit = [&](const FunctionDef &fn) {
    marks[fn.name] = Mark::Active;
    stack.push_back(fn.name);
    for_each_statement(fn.body, [&](const Statement &stmt) {
      const auto *call = stmt.as<UserCallStmt>();
      if (!call)
        return;
      Mark m = marks[call->function];
      if (m == Mark::Active) {
        std::string cycle;
        auto it = std::find(stack.begin(), stack.end(), call->function);
        for (; it != stack.end(); ++it)
          cycle += *it + " -> ";
        cycle += call->function;
        fail_at(p, stmt.line, "recursion detected: " + cycle);
      }
      if (m == Mark::None)
        visit(p.functions.at(call->function));
    });
    stack.pop_back();
    marks[fn.name] = Mark::Done;
  };
  for (const auto &[name, fn] : p.functions)
    if (marks[name] == Mark::None)
      visit(fn);
}

} // namespace

bool FunctionDef::returns_value() const {
  return !body.empty() && body.back().as<ReturnStmt>() != nullptr;
}

SourceLocation Program::location(int statement_id) const {
  int line = 1;
  if (statement_id >= 1 &&
      static_cast<std::size_t>(statement_id) <= statement_lines.size())
    line = statement_lines[statement_id - 1];
  return {file, line, statement_id};
}

Program parse_program(std::string_view text, const std::string &file) {
  Program program = ProgramParser(text, file).parse();
  if (!program.functions.contains("main"))
    throw ProgramError(file + ": program has no function 'main'");
  for (const auto &[name, fn] : program.functions) {
    check_returns(program, fn);
    check_calls(program, fn);
  }
  check_recursion(program);
  return program;
}

} // namespace errchain
