#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "runner.hpp"

namespace lutcalc {

using ParamMap = std::map<std::string, long long>;

struct BuiltinRecipe {
    std::string name;
    std::string summary;
    std::vector<ParamDecl> params;
    std::function<std::string(const ParamMap&)> body;  // steps and assertions for bound values
};

namespace detail {

inline std::string surgery_line(const std::string& ref, long long p, long long q, char dir) {
    return "surgery " + ref + " p " + std::to_string(p) + " q " + std::to_string(q) +
           (dir == 'm' ? " dir m^1 l^0\n" : " dir m^0 l^1\n");
}

// The six surgeries on Z that kill its group, in order.
inline std::string z_surgeries(const std::string& v, int count) {
    const char* t[] = {"T1'", "T1", "T2", "T2'", "T3", "T4"};
    const long long p[] = {1, -1, -1, 1, -1, -1};
    const char d[] = {'m', 'm', 'l', 'l', 'l', 'm'};
    std::string out;
    for (int i = 0; i < count; ++i) out += surgery_line(v + "." + t[i], p[i], 1, d[i]);
    return out;
}

inline std::string z3_surgeries(const std::string& v) {
    return surgery_line(v + ".T1'", 1, 1, 'm') + surgery_line(v + ".T1", -1, 1, 'l') + surgery_line(v + ".T2'", 1, 1, 'l');
}

inline std::string abelian_text(const std::vector<long long>& orders) {
    return format_abelian(abelian_from_cyclic_orders(orders));
}

inline std::vector<BuiltinRecipe> make_builtins() {
    std::vector<BuiltinRecipe> out;
    auto add = [&](std::string name, std::string summary, std::vector<ParamDecl> ps,
                   std::function<std::string(const ParamMap&)> body) {
        out.push_back({std::move(name), std::move(summary), std::move(ps), std::move(body)});
    };

    add("seven", "W1 kills W2 along F2, then two surgeries", {}, [](const ParamMap&) {
        return "block W1 as A\n"
               "block W2 as U\n"
               "sum2 A.F1 U.F2 map identity4 quotient\n" +
               surgery_line("U.T1'", -1, 1, 'm') + surgery_line("U.T2'", -1, 1, 'm') +
               "assert pi1 trivial\n"
               "assert e_sigma 10 -6\n"
               "assert freedman 1 7\n";
    });

    add("five", "W1 kills M along F, then four surgeries", {}, [](const ParamMap&) {
        return "block W1 as A\n"
               "block M as V\n"
               "sum2 A.F1 V.F map theorem-five quotient\n" +
               surgery_line("V.T1", -1, 1, 'm') + surgery_line("V.T2", -1, 1, 'l') +
               surgery_line("V.T3", -1, 1, 'l') + surgery_line("V.T4", -1, 1, 'm') +
               "assert pi1 trivial\n"
               "assert e_sigma 8 -4\n"
               "assert freedman 1 5\n";
    });

    add("cool", "six surgeries on Z, then fill F", {}, [](const ParamMap&) {
        return "block Z as X\n" + z_surgeries("X", 6) +
               "fill X.F\n"
               "assert pi1 trivial\n"
               "assert e_sigma 6 -2\n"
               "assert freedman 1 3\n";
    });

    add("Yfamily", "five surgeries on Z, then -n/1 on T4 along m", {{"n", 2, -3, 3}}, [](const ParamMap&) {
        return "block Z as Y\n" + z_surgeries("Y", 5) +
               "surgery Y.T4 p -n q 1 dir m^1 l^0\n"
               "fill Y.F\n"
               "assert pi1 trivial\n"
               "assert e_sigma 6 -2\n"
               "assert freedman 1 3\n";
    });

    add("ZZ", "five surgeries on Z, T4 left in place", {}, [](const ParamMap&) {
        return "block Z as X1\n" + z_surgeries("X1", 5) +
               "fill X1.F\n"
               "assert pi1 infinite-cyclic\n"
               "assert e_sigma 6 -2\n"
               "assert word_trivial a2\n"
               "assert pushoffs T4 1 y a2\n";
    });

    add("B1", "four surgeries on Z, remaining pieces filled", {}, [](const ParamMap&) {
        return "block Z as B1\n" + z_surgeries("B1", 4) +
               "fill B1.F\n"
               "fill B1.T3\n"
               "fill B1.T4\n"
               "rename B1 a2 t2\n"
               "rename B1 y t1\n"
               "assert pi1 free-abelian 2\n"
               "assert e_sigma 6 -2\n"
               "assert pushoffs T3 1 1 t2\n"
               "assert pushoffs T4 1 t1 t2\n";
    });

    add("10baby", "X kills M along F, then two surgeries", {}, [](const ParamMap&) {
        return "block M as B\n"
               "block X as K\n"
               "sum2 K.F B.F map identity4 quotient\n" +
               surgery_line("B.T1", -1, 1, 'm') + surgery_line("B.T2", -1, 1, 'm') +
               "assert pi1 trivial\n"
               "assert e_sigma 10 -2\n"
               "assert freedman 3 5\n";
    });

    auto sum_with_x = [&](std::string name, std::string other, std::string surf, long long fm, long long fn) {
        add(name, "X summed with " + other + " along genus-2 surfaces", {}, [=](const ParamMap&) {
            return "block X as A\n"
                   "block " + other + " as C\n"
                   "sum2 A.F C." + surf + " map identity4\n"
                   "assert pi1 trivial\n"
                   "assert identity (e+sigma-2)/2 = " + std::to_string(fm) + "\n"
                   "assert freedman " + std::to_string(fm) + " " + std::to_string(fn) + "\n";
        });
    };
    sum_with_x("b31", "W2", "F2", 3, 7);
    sum_with_x("b32", "W1", "F1", 3, 9);
    sum_with_x("b51", "X", "F", 5, 9);

    add("family", "X with m copies of W1 and n copies of W2 summed along parallel copies of F",
        {{"m", 1, 0, 3}, {"n", 1, 0, 3}}, [](const ParamMap& v) {
            long long m = v.at("m"), n = v.at("n");
            std::string s = "block X as C\n";
            for (long long i = 1; i <= m + n; ++i) s += "copy C.F as G" + std::to_string(i) + "\n";
            for (long long i = 1; i <= m + n; ++i) {
                std::string k = (i <= m ? "P" : "Q") + std::to_string(i);
                s += "block " + std::string(i <= m ? "W1" : "W2") + " as " + k + "\n";
                s += "sum2 " + k + (i <= m ? ".F1" : ".F2") + " C.G" + std::to_string(i) + " map identity4 quotient\n";
            }
            return s +
                   "fill C.F\n"
                   "assert pi1 trivial\n"
                   "assert e_sigma 6+8*m+6*n -2*(1+2*m+n)\n"
                   "assert freedman 1+2*m+2*n 3+6*m+4*n\n"
                   "assert identity (e+sigma-2)/2 = 1+2*m+2*n\n"
                   "assert identity (e-sigma-2)/2 = 3+6*m+4*n\n";
        });

    add("Z3", "three surgeries on Z, the rest filled", {}, [](const ParamMap&) {
        return "block Z as Q\n" + z3_surgeries("Q") +
               "fill Q.T2\n"
               "fill Q.T3\n"
               "fill Q.T4\n"
               "fill Q.F\n"
               "assert pi1 free-abelian 3\n"
               "assert h1 Z^3\n"
               "assert e_sigma 6 -2\n";
    });

    add("abelian", "Z3 followed by 1/p, 1/q, 1/r surgeries",
        {{"p", 2, 0, 12}, {"q", 3, 0, 12}, {"r", 4, 0, 12}}, [](const ParamMap& v) {
            std::string g = abelian_text({v.at("p"), v.at("q"), v.at("r")});
            return "block Z as Q\n" + z3_surgeries("Q") +
                   "surgery Q.T2 p 1 q p dir m^1 l^0\n"
                   "surgery Q.T3 p 1 q q dir m^1 l^0\n"
                   "surgery Q.T4 p 1 q r dir m^0 l^1\n"
                   "fill Q.F\n"
                   "assert h1 " + g + "\n"
                   "assert pi1 abelian " + g + "\n"
                   "assert e_sigma 6 -2\n";
        });

    add("free", "twist mapping torus summed with B along T0", {{"n", 2, 1, 4}}, [](const ParamMap&) {
        return "block Y(n) as D\n"
               "block B as K\n"
               "sumT D.T0 K.T3 map inline(x,a2)\n"
               "assert pi1 free n\n"
               "assert e_sigma 10 -2\n";
    });

    add("fibered", "twist mapping torus summed with X1 along T0", {{"n", 1, 1, 3}}, [](const ParamMap& v) {
        int n = static_cast<int>(v.at("n"));
        ManifoldModel y = mapping_torus_block(n, twist_monodromy(n));
        Presentation p = y.presentation;
        p.add_relator(Word::gen(p.index("s")));
        return "block Y(n) as D\n"
               "block X1 as K\n"
               "sumT D.T0 K.T4 map inline(a2,y)\n"
               "assert e_sigma 6 -2\n"
               "assert h1 " + format_abelian(abelianize(p)) + "\n";
    });

    add("fifty", "fibered product block with B and g+r copies of X1", {{"g", 1, 1, 4}, {"r", 1, 0, 4}},
        [](const ParamMap& v) {
            long long k = v.at("g") + v.at("r");
            std::string s = "block N(g+r) as P\n"
                            "block B as K0\n"
                            "sumT P.T0 K0.T3 map inline(x,a2)\n";
            for (long long i = 1; i <= k; ++i) {
                std::string ki = "K" + std::to_string(i);
                s += "block X1 as " + ki + "\n";
                s += "sumT P.T" + std::to_string(i) + " " + ki + ".T4 map inline(a2,y)\n";
            }
            return s +
                   "assert e_sigma 10+6*(g+r) -2-2*(g+r)\n"
                   "assert identity c1sq = 2*(10+6*(g+r))+3*(-2-2*(g+r))\n";
        });

    add("genabelian", "Sym2 block with B and X1 sums realizing a prescribed abelian group",
        {{"n", 2, 2, 6}, {"d1", 2, 0, 12}, {"d2", 3, 0, 12}, {"d3", 0, 0, 12}, {"d4", 5, 0, 12}, {"d5", 4, 0, 12},
         {"d6", 1, 0, 12}},
        [](const ParamMap& v) {
            long long n = v.at("n");
            if (n % 2 != 0) throw RecipeError(0, "genabelian needs even n");
            long long g = (n + 6) / 2;
            std::string s = "block Sym2((n+6)/2) as S\n";
            const char* killed[] = {"Ta1b2", "Tb1b3", "Ta2a3"};
            for (int i = 0; i < 3; ++i) {
                std::string k = "K" + std::to_string(i + 1);
                s += "block B as " + k + "\n";
                s += "sumT S." + std::string(killed[i]) + " " + k + ".T3 map inline(x,a2)\n";
            }
            std::vector<long long> orders;
            int idx = 0;
            for (long long j = 4; j <= g; ++j) {
                std::string js = std::to_string(j);
                for (const std::string& t : {"Tx" + js + "a" + js, "Ty" + js + "b" + js}) {
                    std::string d = "d" + std::to_string(++idx);
                    orders.push_back(v.at(d));
                    std::string k = "L" + std::to_string(idx);
                    s += "block X1 as " + k + "\n";
                    s += "sumT S." + t + " " + k + ".T4 map inline(a2*y^" + d + ",y^-1)\n";
                }
            }
            return s + "assert h1 " + abelian_text(orders) +
                   "\n"
                   "assert e_sigma n^2/2+19*n/2+36 -5*n/2-8\n"
                   "assert identity e = 12*((n+6)/2)-6+(2*((n+6)/2)^2-5*((n+6)/2)+3)\n";
        });

    add("odd", "Sym2 arithmetic block summed with X1", {{"n", 2, 1, 6}}, [](const ParamMap&) {
        return "block Sym2Arith(n) as S\n"
               "block X1 as K\n"
               "sumT S.T K.T4 map inline(a2,y)\n"
               "assert e_sigma 9-5*n+2*n^2 -1-n\n";
    });
    return out;
}

}  // namespace detail

inline const std::vector<BuiltinRecipe>& builtin_recipes() {
    static const std::vector<BuiltinRecipe> all = detail::make_builtins();
    return all;
}

inline const BuiltinRecipe* find_builtin(const std::string& name) {
    for (const auto& b : builtin_recipes())
        if (b.name == name) return &b;
    return nullptr;
}

// Recipe text for bound parameter values; the declared defaults carry the bound values.
inline std::string builtin_text(const BuiltinRecipe& b, const std::map<std::string, long long>& overrides = {}) {
    Recipe decl;
    decl.name = b.name;
    decl.params = b.params;
    ParamValues bound = detail::bind_params(decl, overrides);
    ParamMap values(bound.begin(), bound.end());
    std::string text = "recipe " + b.name + "\n";
    for (const auto& p : b.params) {
        text += "param " + p.name + " default " + std::to_string(values.at(p.name));
        if (p.lo) text += " range " + std::to_string(*p.lo) + ".." + std::to_string(*p.hi);
        text += "\n";
    }
    return text + b.body(values);
}

inline Recipe builtin_recipe(const std::string& name, const std::map<std::string, long long>& overrides = {}) {
    const BuiltinRecipe* b = find_builtin(name);
    if (!b) throw RecipeError(0, "unknown builtin recipe '" + name + "'");
    return parse_recipe(builtin_text(*b, overrides));
}

inline RunReport run_builtin(const std::string& name, const std::map<std::string, long long>& overrides = {},
                             const Budget& budget = {}) {
    RunOptions opt;
    opt.budget = budget;
    return run_recipe(builtin_recipe(name, overrides), opt);
}

}  // namespace lutcalc
