#include "causal/query.hpp"

#include <cctype>

#include "lexer.hpp"

namespace causal {

using detail::Cursor;
using detail::Tok;

namespace {

bool iequal(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::tolower(static_cast<unsigned char>(a[k])) != std::tolower(static_cast<unsigned char>(b[k]))) return false;
  return true;
}

Var resolve(const VariableSpace& space, const detail::Token& t) {
  if (space.contains(t.text)) return space.index_of(t.text);
  std::optional<Var> hit;
  for (Var v = 0; v < space.size(); ++v) {
    if (!iequal(space.name(v), t.text)) continue;
    if (hit) throw ParseError(t.pos, "variable '" + t.text + "' is ambiguous");
    hit = v;
  }
  if (!hit) throw ParseError(t.pos, "unknown variable '" + t.text + "'");
  return *hit;
}

class QueryParser {
 public:
  QueryParser(std::string_view text, const LoadedModel& model)
      : cur_(detail::tokenize(text)), model_(model), space_(*model.space) {}

  QueryExpr parse() {
    if (!cur_.at_name("P")) cur_.fail("unexpected " + detail::describe(cur_.peek()), {"'P'"});
    cur_.next();
    cur_.expect_punct("(");
    bindings(q_.target);
    if (cur_.at_punct("|")) {
      cur_.next();
      while (true) {
        if (cur_.at_name("do") && cur_.peek(1).kind == Tok::punct && cur_.peek(1).text == "(") {
          cur_.next();
          cur_.next();
          bindings(q_.intervened);
          cur_.expect_punct(")");
        } else {
          binding(q_.observed);
        }
        if (!cur_.at_punct(",")) break;
        cur_.next();
      }
    }
    cur_.expect_punct(")");
    if (!cur_.at_end()) cur_.fail("unexpected " + detail::describe(cur_.peek()), {"end of query"});
    if (q_.target.empty()) throw ParseError({1, 1}, "empty target");
    return q_;
  }

 private:
  void bindings(VarSet& into) {
    binding(into);
    while (cur_.at_punct(",")) {
      cur_.next();
      binding(into);
    }
  }

  void binding(VarSet& into) {
    const detail::Token name = cur_.expect_name("variable name");
    Var v = resolve(space_, name);
    if ((q_.target | q_.observed | q_.intervened).contains(v))
      throw ParseError(name.pos, "variable '" + space_.name(v) + "' appears more than once in the query");
    into.insert(v);
    if (!cur_.at_punct("=")) return;
    cur_.next();
    const detail::Token value = cur_.peek();
    if (value.kind != Tok::name && value.kind != Tok::number)
      cur_.fail("unexpected " + detail::describe(value), {"value"});
    cur_.next();
    try {
      q_.values.set(v, model_.value_index(v, value.text));
    } catch (const std::invalid_argument& e) {
      throw ParseError(value.pos, e.what());
    }
  }

  Cursor cur_;
  const LoadedModel& model_;
  const VariableSpace& space_;
  QueryExpr q_;
};

}  // namespace

QueryExpr parse_query(std::string_view text, const LoadedModel& model) {
  return QueryParser(text, model).parse();
}

}  // namespace causal
