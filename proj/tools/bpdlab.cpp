// bpdlab: interpret bounded-pushdown machines, convert between gamblers and
// compressors, run LZ78 experiments, and generate/verify the separation
// sequence. Exit codes: 0 ok, 1 verification failure, 2 usage error,
// 3 machine/validation error.

#include "bpd/compressor.hpp"
#include "bpd/constructions.hpp"
#include "bpd/fixtures.hpp"
#include "bpd/gale.hpp"
#include "bpd/io.hpp"
#include "bpd/lz.hpp"
#include "bpd/machine.hpp"
#include "bpd/separation.hpp"
#include "bpd/verify.hpp"

#include "CLI11.hpp"

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace bpd;

const char* errc_name(errc k) {
    switch (k) {
        case errc::usage: return "usage";
        case errc::syntax: return "syntax";
        case errc::validation: return "validation";
        case errc::undefined_transition: return "undefined-transition";
        case errc::lambda_overflow: return "lambda-overflow";
        case errc::stack_underflow: return "stack-underflow";
        case errc::capacity: return "capacity";
        case errc::domain: return "domain";
        case errc::zero_capital: return "zero-capital";
        case errc::degenerate_zone: return "degenerate-zone";
        case errc::precondition: return "precondition";
        case errc::io: return "io";
    }
    return "error";
}

int exit_for(errc k) { return k == errc::usage ? 2 : 3; }

machine load_machine(const std::string& path, machine_kind want) {
    machine m = parse_machine(read_file(path));
    validation_report rep = validate(m);
    if (!rep.ok())
        throw error(errc::validation,
                    path + ": " + rep.errors.front().code + ": " + rep.errors.front().detail);
    if (m.kind != want)
        throw error(errc::precondition,
                    path + (want == machine_kind::gambler ? ": expected a gambler"
                                                          : ": expected a compressor"));
    return m;
}

// --seq sep:k=K,upto=N
separation_sequence parse_seq_spec(const std::string& spec) {
    const std::string prefix = "sep:";
    if (spec.rfind(prefix, 0) != 0)
        throw error(errc::usage, "sequence spec must look like sep:k=3,upto=12");
    int k = 0, upto = 0;
    std::stringstream ss(spec.substr(prefix.size()));
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw error(errc::usage, "bad sequence spec item: " + item);
        std::string key = item.substr(0, eq);
        int val = 0;
        try {
            val = std::stoi(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw error(errc::usage, "bad sequence spec value: " + item);
        }
        if (key == "k")
            k = val;
        else if (key == "upto")
            upto = val;
        else
            throw error(errc::usage, "unknown sequence spec key: " + key);
    }
    if (k < 2 || upto < k) throw error(errc::usage, "sequence spec needs k >= 2, upto >= k");
    return generate_s(k, upto);
}

struct input_source {
    std::string text;
    std::optional<separation_sequence> seq;
};

input_source resolve_input(const std::string& input, const std::string& seq) {
    if (!input.empty() && !seq.empty())
        throw error(errc::usage, "--input and --seq are mutually exclusive");
    if (input.empty() && seq.empty()) throw error(errc::usage, "need --input or --seq");
    if (!input.empty()) return {input, std::nullopt};
    separation_sequence s = parse_seq_spec(seq);
    std::string text = s.text;
    return {std::move(text), std::move(s)};
}

// Explicit list wins; a sequence defaults to its segment ends; otherwise
// every prefix length.
std::vector<size_t> resolve_checkpoints(const std::vector<size_t>& given,
                                        const input_source& src) {
    if (!given.empty()) {
        for (size_t i = 0; i + 1 < given.size(); ++i)
            if (given[i] >= given[i + 1])
                throw error(errc::usage, "checkpoints must be strictly increasing");
        if (given.back() > src.text.size())
            throw error(errc::usage, "checkpoint beyond input length");
        return given;
    }
    std::vector<size_t> cps;
    if (src.seq) {
        cps.push_back(0);
        cps.push_back(src.seq->early_len);
        for (const auto& [n, e] : src.seq->segment_ends) cps.push_back(e);
    } else {
        for (size_t i = 0; i <= src.text.size(); ++i) cps.push_back(i);
    }
    return cps;
}

void emit_csv(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_file_atomic(path, content);
}

std::string legend_comment(const tabulation& t) {
    std::string s;
    for (const auto& [c, flat] : t.legend)
        s += std::string("# chunk ") + c + " = " + flat + "\n";
    return s;
}

int print_criteria(const std::vector<criterion_result>& rs) {
    bool all = true;
    for (const criterion_result& r : rs) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.id << " " << r.name;
        if (!r.detail.empty()) std::cout << "  -- " << r.detail;
        std::cout << "\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded-pushdown dimension laboratory"};
    app.require_subcommand(1);
    std::string alpha_syms = "01";
    app.add_option("--alphabet", alpha_syms, "input alphabet for raw-string commands")
        ->capture_default_str();

    std::function<int()> action;

    // validate
    {
        auto* sub = app.add_subcommand("validate", "check a machine file");
        auto file = std::make_shared<std::string>();
        sub->add_option("file", *file, "machine file")->required();
        sub->callback([&action, file] {
            action = [file]() -> int {
                machine m = parse_machine(read_file(*file));
                validation_report rep = validate(m);
                std::cout << (rep.ok() ? "valid" : "invalid") << "\n" << rep.summary();
                return rep.ok() ? 0 : 3;
            };
        });
    }

    // run-gambler
    {
        auto* sub = app.add_subcommand("run-gambler", "capital trace of a gambler on an input");
        struct opts {
            std::string file, input, seq, csv;
            std::vector<size_t> checkpoints;
            size_t exact_limit = 4096;
        };
        auto o = std::make_shared<opts>();
        sub->add_option("file", o->file)->required();
        sub->add_option("--input", o->input, "literal input string");
        sub->add_option("--seq", o->seq, "generated sequence spec, e.g. sep:k=3,upto=12");
        sub->add_option("--checkpoints", o->checkpoints)->delimiter(',');
        sub->add_option("--csv", o->csv, "write trace CSV here");
        sub->add_option("--exact-limit", o->exact_limit,
                        "drop the exact rational track after this many symbols");
        sub->callback([&action, o] {
            action = [o]() -> int {
                machine m = load_machine(o->file, machine_kind::gambler);
                input_source src = resolve_input(o->input, o->seq);
                check_str(m.input, src.text, "input");
                table_gambler tg(m);
                capital_trace tr = martingale(tg, src.text, o->exact_limit);
                std::cout << "n=" << tr.steps() << " log2_capital=" << format_double(tr.log_at(tr.steps()));
                if (tr.steps() > 0 && !tr.values[tr.steps()].is_zero())
                    std::cout << " dim_estimate="
                              << format_double(tr.dim_estimate_at(tr.steps()));
                std::cout << "\n";
                if (!o->csv.empty()) {
                    std::ostringstream os;
                    write_trace_csv(os, tr, resolve_checkpoints(o->checkpoints, src));
                    emit_csv(o->csv, os.str());
                }
                return 0;
            };
        });
    }

    // run-compressor
    {
        auto* sub = app.add_subcommand("run-compressor", "compress an input, report lengths");
        struct opts {
            std::string file, input, seq, csv;
            std::vector<size_t> checkpoints;
        };
        auto o = std::make_shared<opts>();
        sub->add_option("file", o->file)->required();
        sub->add_option("--input", o->input);
        sub->add_option("--seq", o->seq);
        sub->add_option("--checkpoints", o->checkpoints)->delimiter(',');
        sub->add_option("--csv", o->csv);
        sub->callback([&action, o] {
            action = [o]() -> int {
                machine m = load_machine(o->file, machine_kind::compressor);
                input_source src = resolve_input(o->input, o->seq);
                check_str(m.input, src.text, "input");
                table_compressor tc(m);
                std::string out = compress(tc, src.text);
                std::cout << "n=" << src.text.size() << " output_len=" << out.size();
                if (!src.text.empty()) {
                    rational ratio = rational(big_int(out.size())) / big_int(src.text.size());
                    std::cout << " ratio=" << format_rational(ratio);
                }
                std::cout << "\n";
                if (!o->csv.empty()) {
                    std::ostringstream os;
                    write_compression_csv(os, tc, src.text,
                                          resolve_checkpoints(o->checkpoints, src));
                    emit_csv(o->csv, os.str());
                }
                return 0;
            };
        });
    }

    // il-check
    {
        auto* sub = app.add_subcommand("il-check", "information-losslessness up to a length");
        auto file = std::make_shared<std::string>();
        auto maxlen = std::make_shared<size_t>(6);
        sub->add_option("file", *file)->required();
        sub->add_option("--max-len", *maxlen)->capture_default_str();
        sub->callback([&action, file, maxlen] {
            action = [file, maxlen]() -> int {
                machine m = load_machine(*file, machine_kind::compressor);
                table_compressor tc(m);
                il_result il = il_check(tc, *maxlen);
                if (il.il) {
                    std::cout << "IL: yes\n";
                    return 0;
                }
                std::cout << "IL: no (" << il.witness_a << " vs " << il.witness_b << ")\n";
                return 1;
            };
        });
    }

    // c2g
    {
        auto* sub = app.add_subcommand("c2g", "gambler that mirrors a compressor's output length");
        struct opts {
            std::string file, exp;
            int k = 1;
        };
        auto o = std::make_shared<opts>();
        sub->add_option("file", o->file)->required();
        sub->add_option("--k", o->k, "block length")->required();
        sub->add_option("--export", o->exp, "tabulate and write a machine file");
        sub->callback([&action, o] {
            action = [o]() -> int {
                machine m = load_machine(o->file, machine_kind::compressor);
                block_gambler g = compressor_to_gambler(m, o->k);
                std::cout << "block gambler: k=" << o->k << " base_states=" << m.states.size()
                          << "\n";
                if (!o->exp.empty()) {
                    tabulation t = tabulate(g);
                    write_file_atomic(o->exp, serialize_machine(t.m) + legend_comment(t));
                    std::cout << "table states: " << t.m.states.size() << "\n";
                }
                return 0;
            };
        });
    }

    // g2c
    {
        auto* sub = app.add_subcommand("g2c", "block-coding compressor built from a gambler");
        struct opts {
            std::string file, exp, rho;
            int k = 1;
            bool dump_code = false;
        };
        auto o = std::make_shared<opts>();
        sub->add_option("file", o->file)->required();
        sub->add_option("--k", o->k, "block length")->required();
        sub->add_option("--rho", o->rho, "apply the nonvanishing transform first (e.g. 3/4)");
        sub->add_flag("--dump-code", o->dump_code, "print the start-configuration block code");
        sub->add_option("--export", o->exp, "tabulate and write a machine file");
        sub->callback([&action, o] {
            action = [o]() -> int {
                machine m = load_machine(o->file, machine_kind::gambler);
                if (!o->rho.empty()) m = nonvanishing_transform(m, parse_rational(o->rho));
                block_compressor c = gambler_to_compressor(m, o->k);
                std::cout << "block compressor: k=" << o->k << " base_states=" << m.states.size()
                          << "\n";
                if (o->dump_code) {
                    const sfe_code& t = c.code_table_at_start();
                    for (size_t i = 0; i < t.blocks.size(); ++i)
                        std::cout << t.blocks[i] << " p=" << format_rational(t.probs[i])
                                  << " code=" << t.codes[i] << "\n";
                }
                if (!o->exp.empty()) {
                    tabulation t = tabulate(c);
                    write_file_atomic(o->exp, serialize_machine(t.m) + legend_comment(t));
                    std::cout << "table states: " << t.m.states.size() << "\n";
                }
                return 0;
            };
        });
    }

    // lz
    {
        auto* lz = app.add_subcommand("lz", "LZ78 parsing and compression ratio");
        lz->require_subcommand(1);
        struct opts {
            std::string input, seq, csv, out, coding = "fixed";
            std::vector<size_t> checkpoints;
        };
        auto o = std::make_shared<opts>();
        auto* parse = lz->add_subcommand("parse", "phrase table of an input");
        parse->add_option("--input", o->input);
        parse->add_option("--seq", o->seq);
        parse->add_option("--out", o->out, "write the phrase table here");
        auto* ratio = lz->add_subcommand("ratio", "compressed-size ratio of an input");
        ratio->add_option("--input", o->input);
        ratio->add_option("--seq", o->seq);
        ratio->add_option("--checkpoints", o->checkpoints)->delimiter(',');
        ratio->add_option("--csv", o->csv);
        ratio->add_option("--coding", o->coding, "pointer coding: fixed or gamma")
            ->check(CLI::IsMember({"fixed", "gamma"}))
            ->capture_default_str();
        parse->callback([&action, o, &alpha_syms] {
            action = [o, &alpha_syms]() -> int {
                alphabet a(alpha_syms);
                input_source src = resolve_input(o->input, o->seq);
                lz_phrase_table t = lz_parse(a, src.text);
                size_t len = lz_output_length(t);
                std::cout << "phrases=" << t.count() << " output_len=" << len;
                if (!src.text.empty())
                    std::cout << " ratio="
                              << format_double(static_cast<double>(len) /
                                               static_cast<double>(src.text.size()));
                std::cout << "\n";
                if (!o->out.empty()) {
                    std::ostringstream os;
                    write_phrase_dump(os, t);
                    emit_csv(o->out, os.str());
                }
                return 0;
            };
        });
        ratio->callback([&action, o, &alpha_syms] {
            action = [o, &alpha_syms]() -> int {
                alphabet a(alpha_syms);
                input_source src = resolve_input(o->input, o->seq);
                pointer_coding pc =
                    o->coding == "gamma" ? pointer_coding::gamma : pointer_coding::fixed;
                rational r = lz_ratio(a, src.text, pc);
                std::cout << "n=" << src.text.size() << " ratio="
                          << format_double(r.convert_to<double>()) << "\n";
                if (!o->csv.empty()) {
                    std::ostringstream os;
                    write_lz_csv(os, a, src.text, resolve_checkpoints(o->checkpoints, src), pc);
                    emit_csv(o->csv, os.str());
                }
                return 0;
            };
        });
    }

    // gen-seq
    {
        auto* sub = app.add_subcommand("gen-seq", "emit the separation sequence");
        struct opts {
            std::string out, zones;
            int k = 3, upto = 3;
        };
        auto o = std::make_shared<opts>();
        sub->add_option("--k", o->k, "run-length parameter")->required();
        sub->add_option("--upto", o->upto, "last segment index")->required();
        sub->add_option("--out", o->out, "write the sequence here (stdout otherwise)");
        sub->add_option("--zones", o->zones, "write the zone CSV here");
        sub->callback([&action, o] {
            action = [o]() -> int {
                separation_sequence s = generate_s(o->k, o->upto);
                if (o->out.empty())
                    std::cout << s.text << "\n";
                else
                    write_file_atomic(o->out, s.text);
                if (!o->zones.empty()) {
                    std::ostringstream os;
                    write_zones_csv(os, s);
                    emit_csv(o->zones, os.str());
                }
                return 0;
            };
        });
    }

    // sep-gambler
    {
        auto* sub = app.add_subcommand("sep-gambler", "emit the separation gambler");
        struct opts {
            std::string mode = "corrected", exp;
            int k = 3;
        };
        auto o = std::make_shared<opts>();
        sub->add_option("--k", o->k)->required();
        sub->add_option("--mode", o->mode)
            ->check(CLI::IsMember({"corrected", "paper"}))
            ->capture_default_str();
        sub->add_option("--export", o->exp, "write the machine file here (stdout otherwise)");
        sub->callback([&action, o] {
            action = [o]() -> int {
                separation_spec spec{o->k, o->mode == "paper" ? sep_mode::paper_faithful
                                                              : sep_mode::corrected};
                machine m = build_separation_gambler(spec);
                std::string text = serialize_machine(m);
                if (o->exp.empty())
                    std::cout << text;
                else
                    write_file_atomic(o->exp, text);
                return 0;
            };
        });
    }

    // verify
    {
        auto* ver = app.add_subcommand("verify", "run acceptance checks");
        ver->require_subcommand(1);
        auto* lem = ver->add_subcommand("lemmas", "exact identity and bound suites");
        lem->callback([&action] {
            action = []() -> int {
                return print_criteria({acc_fairness_gale(), acc_block_identities(),
                                       acc_capital_lower_bound(), acc_block_coding(),
                                       acc_nonvanishing()});
            };
        });
        struct pc_opts {
            int k = 3, upto = 6;
        };
        auto pco = std::make_shared<pc_opts>();
        auto* pc = ver->add_subcommand("parse-claim", "LZ phrase-set claim on the sequence");
        pc->add_option("--k", pco->k)->capture_default_str();
        pc->add_option("--upto", pco->upto)->capture_default_str();
        pc->callback([&action, pco] {
            action = [pco]() -> int {
                check_result r = verify_parse_claim(pco->k, pco->upto);
                std::cout << (r.ok ? "PASS" : "FAIL") << "  parse-claim k=" << pco->k
                          << " upto=" << pco->upto;
                if (!r.witness.empty()) std::cout << "  -- " << r.witness;
                std::cout << "\n";
                return r.ok ? 0 : 1;
            };
        });
        auto* sep = ver->add_subcommand("separation", "ratio and capital suites");
        sep->callback([&action] {
            action = []() -> int {
                return print_criteria({acc_lz_ratio(), acc_separation_gambler(),
                                       acc_negative_control(), acc_determinism()});
            };
        });
        auto* all = ver->add_subcommand("all", "every acceptance criterion");
        all->callback([&action] {
            action = []() -> int { return print_criteria(run_acceptance()); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const error& e) {
        std::cerr << "error[" << errc_name(e.kind) << "] " << e.what() << "\n";
        return exit_for(e.kind);
    } catch (const std::exception& e) {
        std::cerr << "error[internal] " << e.what() << "\n";
        return 3;
    }
}
