#include "symclust/symexec/engine.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_set>
#include <variant>

#include "symclust/errors.hpp"

namespace symclust::symexec {

using lang::BinOp;
using lang::Expr;
using lang::Program;
using lang::SnipType;
using lang::Stmt;
using lang::UnOp;

namespace {

struct SymArray {
  std::vector<SymExprPtr> elems;
};
using SymVal = std::variant<SymExprPtr, SymArray>;

const SymExprPtr& scalar(const SymVal& v) { return std::get<SymExprPtr>(v); }

struct SymState {
  std::map<std::string, SymVal> env;
  std::vector<SymExprPtr> pc;
  std::unordered_set<SymExprPtr, SymExprPtrHash, SymExprPtrEq> pc_set;

  // Returns false when the constraint contradicts one already present.
  bool add(const SymExprPtr& c) {
    if (c->is_bool_lit()) return c->bool_lit;
    if (pc_set.count(c)) return true;
    pc.push_back(c);
    pc_set.insert(c);
    return true;
  }
};

class Engine {
 public:
  Engine(const Program& p, const InputDomain& dom, int unroll_cap, int trace_cap,
         Deadline deadline)
      : prog_(p), dom_(dom), unroll_cap_(unroll_cap), trace_cap_(trace_cap),
        deadline_(deadline) {}

  TraceSet run() {
    std::vector<size_t> array_params;
    for (size_t i = 0; i < prog_.params.size(); ++i)
      if (prog_.params[i].type == SnipType::IntArray) array_params.push_back(i);

    std::vector<int> lens(array_params.size(), 0);
    for (;;) {
      SymState st;
      for (size_t i = 0; i < prog_.params.size(); ++i) {
        const lang::Param& param = prog_.params[i];
        switch (param.type) {
          case SnipType::Int:
            st.env[param.name] = sym_input_int((int)i);
            break;
          case SnipType::Bool:
            st.env[param.name] = sym_input_bool((int)i);
            break;
          case SnipType::IntArray:
            break;  // seeded below with its enumerated length
        }
      }
      for (size_t a = 0; a < array_params.size(); ++a) {
        size_t i = array_params[a];
        SymArray arr;
        for (int e = 0; e < lens[a]; ++e)
          arr.elems.push_back(sym_input_elem((int)i, e));
        st.env[prog_.params[i].name] = std::move(arr);
        st.add(sym_binary(BinOp::Eq, sym_input_len((int)i), sym_int(lens[a])));
      }

      exec_block(std::move(st), prog_.body, 0, [](SymState) {
        throw std::logic_error("control fell through a validated program");
      });

      // Odometer over array lengths, last array parameter fastest.
      size_t pos = array_params.size();
      while (pos > 0) {
        if (lens[pos - 1] < dom_.max_array_len) {
          ++lens[pos - 1];
          break;
        }
        lens[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
    return std::move(out_);
  }

 private:
  using Cont = std::function<void(SymState)>;
  using EvalCont = std::function<void(SymState, SymVal)>;

  const Program& prog_;
  InputDomain dom_;
  int unroll_cap_, trace_cap_;
  Deadline deadline_;
  TraceSet out_;
  long long ticks_ = 0;

  bool capped() const { return (int)out_.traces.size() >= trace_cap_; }

  void tick() {
    if (deadline_ && (++ticks_ & 0xFFF) == 0 &&
        std::chrono::steady_clock::now() > *deadline_)
      throw EngineTimeout{};
  }

  void emit_return(SymState st, SymVal v) {
    Trace t;
    t.constraint = std::move(st.pc);
    t.outcome = Trace::Outcome::Return;
    if (auto* arr = std::get_if<SymArray>(&v)) {
      t.ret_is_array = true;
      t.ret_array = std::move(arr->elems);
    } else {
      t.ret_scalar = std::move(std::get<SymExprPtr>(v));
    }
    out_.traces.push_back(std::move(t));
  }

  void emit_error(SymState st) {
    out_.traces.push_back(Trace{std::move(st.pc), Trace::Outcome::Error, {}, {}, false});
  }

  void emit_unknown(SymState st) {
    out_.traces.push_back(Trace{std::move(st.pc), Trace::Outcome::Unknown, {}, {}, false});
    out_.complete = false;
  }

  // Splits on a symbolic boolean. Literal or already-constrained conditions
  // do not fork; contradicted branches are dropped entirely. Loop heads pass
  // false_first so exit paths are emitted before deep unrollings and survive
  // the trace cap.
  void branch_bool(SymState st, const SymExprPtr& cond, const Cont& on_true,
                   const Cont& on_false, bool false_first = false) {
    if (cond->is_bool_lit()) {
      (cond->bool_lit ? on_true : on_false)(std::move(st));
      return;
    }
    if (st.pc_set.count(cond)) {
      on_true(std::move(st));
      return;
    }
    SymExprPtr neg = sym_not(cond);
    if (st.pc_set.count(neg)) {
      on_false(std::move(st));
      return;
    }
    SymState other = st;
    if (false_first) {
      st.add(neg);
      on_false(std::move(st));
      other.add(cond);
      on_true(std::move(other));
    } else {
      st.add(cond);
      on_true(std::move(st));
      other.add(neg);
      on_false(std::move(other));
    }
  }

  void exec_block(SymState st, const std::vector<lang::StmtPtr>& stmts, size_t idx,
                  const Cont& k) {
    if (idx == stmts.size()) {
      k(std::move(st));
      return;
    }
    exec_stmt(std::move(st), *stmts[idx], [this, &stmts, idx, &k](SymState s) {
      exec_block(std::move(s), stmts, idx + 1, k);
    });
  }

  void exec_stmt(SymState st, const Stmt& s, const Cont& k) {
    if (capped()) {
      emit_unknown(std::move(st));
      return;
    }
    tick();
    switch (s.kind) {
      case Stmt::Kind::Let:
      case Stmt::Kind::Assign:
        eval(std::move(st), *s.value, [&s, &k](SymState s1, SymVal v) {
          s1.env.insert_or_assign(s.name, std::move(v));
          k(std::move(s1));
        });
        return;
      case Stmt::Kind::IndexAssign:
        eval(std::move(st), *s.index, [this, &s, &k](SymState s1, SymVal idx_v) {
          SymExprPtr idx = scalar(idx_v);
          eval(std::move(s1), *s.value, [this, &s, &k, idx](SymState s2, SymVal val_v) {
            write_element(std::move(s2), s.name, idx, scalar(val_v), k);
          });
        });
        return;
      case Stmt::Kind::If:
        eval(std::move(st), *s.value, [this, &s, &k](SymState s1, SymVal cond) {
          branch_bool(
              std::move(s1), scalar(cond),
              [this, &s, &k](SymState t) { exec_block(std::move(t), s.body, 0, k); },
              [this, &s, &k](SymState f) {
                if (s.else_body.empty())
                  k(std::move(f));
                else
                  exec_block(std::move(f), s.else_body, 0, k);
              });
        });
        return;
      case Stmt::Kind::While:
        run_while(std::move(st), s, 0, k);
        return;
      case Stmt::Kind::For:
        eval(std::move(st), *s.value, [this, &s, &k](SymState s1, SymVal lo) {
          SymExprPtr lo_e = scalar(lo);
          eval(std::move(s1), *s.hi, [this, &s, &k, lo_e](SymState s2, SymVal hi) {
            run_for(std::move(s2), s, lo_e, scalar(hi), 0, k);
          });
        });
        return;
      case Stmt::Kind::Return:
        eval(std::move(st), *s.value,
             [this](SymState s1, SymVal v) { emit_return(std::move(s1), std::move(v)); });
        return;
    }
  }

  void run_while(SymState st, const Stmt& s, int iter, const Cont& k) {
    if (capped()) {
      emit_unknown(std::move(st));
      return;
    }
    tick();
    eval(std::move(st), *s.value, [this, &s, iter, &k](SymState s1, SymVal cond) {
      branch_bool(
          std::move(s1), scalar(cond),
          [this, &s, iter, &k](SymState t) {
            if (iter >= unroll_cap_) {
              emit_unknown(std::move(t));
              return;
            }
            exec_block(std::move(t), s.body, 0, [this, &s, iter, &k](SymState s2) {
              run_while(std::move(s2), s, iter + 1, k);
            });
          },
          [&k](SymState f) { k(std::move(f)); }, /*false_first=*/true);
    });
  }

  // The visible loop variable is re-seeded from lo + iteration each pass, so
  // body writes to it cannot change the iteration sequence (matching the
  // concrete evaluator).
  void run_for(SymState st, const Stmt& s, const SymExprPtr& lo, const SymExprPtr& hi,
               int iter, const Cont& k) {
    if (capped()) {
      emit_unknown(std::move(st));
      return;
    }
    tick();
    SymExprPtr counter = sym_binary(BinOp::Add, lo, sym_int(iter));
    SymExprPtr cond = sym_binary(BinOp::Lt, counter, hi);
    branch_bool(
        std::move(st), cond,
        [this, &s, &lo, &hi, iter, &k, &counter](SymState t) {
          if (iter >= unroll_cap_) {
            emit_unknown(std::move(t));
            return;
          }
          t.env.insert_or_assign(s.name, counter);
          exec_block(std::move(t), s.body, 0, [this, &s, &lo, &hi, iter, &k](SymState s2) {
            run_for(std::move(s2), s, lo, hi, iter + 1, k);
          });
        },
        [&k](SymState f) { k(std::move(f)); }, /*false_first=*/true);
  }

  void read_element(SymState st, const std::vector<SymExprPtr>& elems,
                    const SymExprPtr& idx, const EvalCont& k) {
    const int len = (int)elems.size();
    if (len == 0) {
      emit_error(std::move(st));
      return;
    }
    if (idx->is_int_lit()) {
      if (idx->int_lit < 0 || idx->int_lit >= len) {
        emit_error(std::move(st));
        return;
      }
      SymExprPtr v = elems[(size_t)idx->int_lit];
      k(std::move(st), std::move(v));
      return;
    }
    SymExprPtr oob = sym_binary(BinOp::Or, sym_binary(BinOp::Lt, idx, sym_int(0)),
                                sym_binary(BinOp::Ge, idx, sym_int(len)));
    branch_bool(
        std::move(st), oob, [this](SymState t) { emit_error(std::move(t)); },
        [&elems, &idx, &k](SymState f) { k(std::move(f), sym_array_read(idx, elems)); });
  }

  void write_element(SymState st, const std::string& name, const SymExprPtr& idx,
                     const SymExprPtr& val, const Cont& k) {
    SymArray& arr = std::get<SymArray>(st.env.at(name));
    const int len = (int)arr.elems.size();
    if (len == 0) {
      emit_error(std::move(st));
      return;
    }
    if (idx->is_int_lit()) {
      if (idx->int_lit < 0 || idx->int_lit >= len) {
        emit_error(std::move(st));
        return;
      }
      arr.elems[(size_t)idx->int_lit] = val;
      k(std::move(st));
      return;
    }
    SymExprPtr oob = sym_binary(BinOp::Or, sym_binary(BinOp::Lt, idx, sym_int(0)),
                                sym_binary(BinOp::Ge, idx, sym_int(len)));
    branch_bool(
        std::move(st), oob, [this](SymState t) { emit_error(std::move(t)); },
        [&name, &idx, &val, &k](SymState f) {
          SymArray& a = std::get<SymArray>(f.env.at(name));
          for (size_t j = 0; j < a.elems.size(); ++j) {
            SymExprPtr is_j = sym_binary(BinOp::Eq, idx, sym_int((int)j));
            a.elems[j] = sym_ite(is_j, val, a.elems[j]);
          }
          k(std::move(f));
        });
  }

  void eval(SymState st, const Expr& e, const EvalCont& k) {
    if (capped()) {
      emit_unknown(std::move(st));
      return;
    }
    tick();
    switch (e.kind) {
      case Expr::Kind::IntLit:
        k(std::move(st), sym_int(e.int_value));
        return;
      case Expr::Kind::BoolLit:
        k(std::move(st), sym_bool(e.bool_value));
        return;
      case Expr::Kind::Var: {
        SymVal v = st.env.at(e.name);
        k(std::move(st), std::move(v));
        return;
      }
      case Expr::Kind::Index:
        eval(std::move(st), *e.lhs, [this, &e, &k](SymState s1, SymVal idx_v) {
          // Expressions cannot mutate the environment, so the array binding
          // is unchanged by subscript evaluation.
          std::vector<SymExprPtr> elems = std::get<SymArray>(s1.env.at(e.name)).elems;
          read_element(std::move(s1), elems, scalar(idx_v), k);
        });
        return;
      case Expr::Kind::Len:
        eval(std::move(st), *e.lhs, [&k](SymState s1, SymVal arr) {
          auto len = (int)std::get<SymArray>(arr).elems.size();
          k(std::move(s1), sym_int(len));
        });
        return;
      case Expr::Kind::Sorted:
        eval(std::move(st), *e.lhs, [&k](SymState s1, SymVal arr) {
          const auto& elems = std::get<SymArray>(arr).elems;
          SymArray sorted_arr;
          sorted_arr.elems.reserve(elems.size());
          for (size_t r = 0; r < elems.size(); ++r)
            sorted_arr.elems.push_back(sym_sort_select((int)r, elems));
          k(std::move(s1), std::move(sorted_arr));
        });
        return;
      case Expr::Kind::Unary:
        eval(std::move(st), *e.lhs, [&e, &k](SymState s1, SymVal v) {
          k(std::move(s1), sym_unary(e.un, scalar(v)));
        });
        return;
      case Expr::Kind::Binary:
        eval_binary(std::move(st), e, k);
        return;
    }
  }

  void eval_binary(SymState st, const Expr& e, const EvalCont& k) {
    if (e.bin == BinOp::And || e.bin == BinOp::Or) {
      const bool is_and = e.bin == BinOp::And;
      eval(std::move(st), *e.lhs, [this, &e, &k, is_and](SymState s1, SymVal lhs_v) {
        const SymExprPtr& lhs = scalar(lhs_v);
        if (lhs->is_bool_lit()) {
          if (lhs->bool_lit == is_and)
            eval(std::move(s1), *e.rhs, k);  // left neutral: result is rhs
          else
            k(std::move(s1), sym_bool(!is_and));  // short-circuit
          return;
        }
        // Fork so the right operand is only evaluated (and its error paths
        // only explored) on the paths where it actually runs.
        branch_bool(
            std::move(s1), lhs,
            [this, &e, &k, is_and](SymState t) {
              if (is_and)
                eval(std::move(t), *e.rhs, k);
              else
                k(std::move(t), sym_bool(true));
            },
            [this, &e, &k, is_and](SymState f) {
              if (is_and)
                k(std::move(f), sym_bool(false));
              else
                eval(std::move(f), *e.rhs, k);
            });
      });
      return;
    }

    eval(std::move(st), *e.lhs, [this, &e, &k](SymState s1, SymVal lhs_v) {
      SymExprPtr lhs = scalar(lhs_v);
      eval(std::move(s1), *e.rhs, [this, &e, &k, lhs](SymState s2, SymVal rhs_v) {
        SymExprPtr rhs = scalar(rhs_v);
        if (e.bin == BinOp::Div || e.bin == BinOp::Mod) {
          if (rhs->is_int_lit()) {
            if (rhs->int_lit == 0) {
              emit_error(std::move(s2));
              return;
            }
            k(std::move(s2), sym_binary(e.bin, lhs, rhs));
            return;
          }
          branch_bool(
              std::move(s2), sym_binary(BinOp::Eq, rhs, sym_int(0)),
              [this](SymState t) { emit_error(std::move(t)); },
              [&e, &k, &lhs, &rhs](SymState f) {
                k(std::move(f), sym_binary(e.bin, lhs, rhs));
              });
          return;
        }
        k(std::move(s2), sym_binary(e.bin, lhs, rhs));
      });
    });
  }
};

bool constraint_satisfied(const Trace& t, const std::vector<Value>& inputs) {
  for (const auto& c : t.constraint)
    if (!eval_sym(*c, inputs).as_bool()) return false;
  return true;
}

Value trace_return_value(const Trace& t, const std::vector<Value>& inputs) {
  if (!t.ret_is_array) return eval_sym(*t.ret_scalar, inputs);
  std::vector<BigInt> elems;
  elems.reserve(t.ret_array.size());
  for (const auto& e : t.ret_array) elems.push_back(eval_sym(*e, inputs).as_int());
  return Value::of_array(std::move(elems));
}

}  // namespace

TraceSet sym_execute(const Program& p, const InputDomain& dom, int unroll_cap,
                     int trace_cap, Deadline deadline) {
  if (unroll_cap <= 0 || trace_cap <= 0)
    throw UsageError("unroll and trace caps must be positive");
  if (dom.int_bound < 0 || dom.max_array_len < 0 || dom.array_elem_bound < 0)
    throw UsageError("input domain bounds must be nonnegative");
  return Engine(p, dom, unroll_cap, trace_cap, deadline).run();
}

std::optional<TraceMatch> match_trace(const TraceSet& ts,
                                      const std::vector<Value>& inputs) {
  for (size_t i = 0; i < ts.traces.size(); ++i) {
    const Trace& t = ts.traces[i];
    if (!constraint_satisfied(t, inputs)) continue;
    TraceMatch m{(int)i, t.outcome, {}};
    if (t.outcome == Trace::Outcome::Return) m.value = trace_return_value(t, inputs);
    return m;
  }
  return std::nullopt;
}

std::vector<int> satisfied_traces(const TraceSet& ts, const std::vector<Value>& inputs) {
  std::vector<int> out;
  for (size_t i = 0; i < ts.traces.size(); ++i)
    if (constraint_satisfied(ts.traces[i], inputs)) out.push_back((int)i);
  return out;
}

}  // namespace symclust::symexec
