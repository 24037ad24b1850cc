// SPDX-License-Identifier: Apache-2.0
//
// risanm - RIS-aided MIMO channel estimation by atomic norm minimization
// Copyright (C) 2026 The risanm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include "risanm/experiment.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace risanm;

namespace
{
    struct Run
    {
        int code;
        std::string out;
        std::string err;
    };

    Run cli(std::vector<std::string> args)
    {
        args.insert(args.begin(), "risanm_cli");
        std::vector<char *> argv;
        for (auto &a : args)
            argv.push_back(a.data());
        std::ostringstream out, err;
        const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
        return {code, out.str(), err.str()};
    }

    std::filesystem::path scratch_dir()
    {
        auto d = std::filesystem::temp_directory_path() / "risanm_cli_test";
        std::filesystem::create_directories(d);
        return d;
    }

    std::string write_config(const std::string &name, const std::string &text)
    {
        const auto p = scratch_dir() / name;
        std::ofstream(p) << text;
        return p.string();
    }

    const char *small_cfg = "M_B=4\nN_B=2\nM_R=16\nM_U=2\nN_U=1\nD=8\nB=8\n"
                            "snr_list=0\nestimators=ANM\nseparation_list=10\nframes_list=8\n";

    std::string slurp(const std::string &path)
    {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
}

TEST_CASE("cli writes the csv file")
{
    const std::string cfg = write_config("small.cfg", small_cfg);
    const std::string out = (scratch_dir() / "r.csv").string();
    std::remove(out.c_str());
    const Run r = cli({"--experiment", "snr", "--trials", "2", "--seed", "7", "--out", out, "--config", cfg});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    const std::string text = slurp(out);
    CHECK(text.rfind("x,estimator,nmse,trials,failures\n0,ANM,", 0) == 0);
    CHECK(text.find(",2,0\n") != std::string::npos);
}

TEST_CASE("cli without --out prints to stdout")
{
    const std::string cfg = write_config("small.cfg", small_cfg);
    const Run a = cli({"--experiment", "separation", "--trials", "2", "--config", cfg});
    CHECK(a.code == 0);
    CHECK(a.out.rfind("x,estimator,nmse,trials,failures\n10,ANM,", 0) == 0);
    const Run b = cli({"--experiment", "separation", "--trials", "2", "--config", cfg, "--threads", "2"});
    CHECK(b.out == a.out);
    const Run c = cli({"--experiment", "frames", "--trials", "1", "--config", cfg, "--estimators", "ANM_NO_ADAPT"});
    CHECK(c.code == 0);
    CHECK(c.out.find("8,ANM_NO_ADAPT,") != std::string::npos);
}

TEST_CASE("cli solver trace")
{
    const std::string cfg = write_config("small.cfg", small_cfg);
    const std::string trace = (scratch_dir() / "trace.csv").string();
    const Run r = cli({"--experiment", "snr", "--trials", "1", "--config", cfg, "--solver-trace", trace, "--verbose"});
    CHECK(r.code == 0);
    CHECK(r.err.find("nmse=") != std::string::npos);
    const std::string t = slurp(trace);
    CHECK(t.rfind("iteration,objective,primal_residual,dual_residual\n1,", 0) == 0);
}

TEST_CASE("cli errors")
{
    const Run unknown = cli({"--experiment", "snr", "--bogus"});
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("Usage") != std::string::npos);
    CHECK(cli({}).code == 1);
    CHECK(cli({"--experiment", "fig9"}).code == 1);
    const Run missing = cli({"--experiment", "snr", "--config", "/nonexistent/x.cfg"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("--experiment") != std::string::npos);
    CHECK(cli({"--experiment", "snr", "--config", write_config("bad.cfg", "nonsense=3\n")}).code == 1);
    CHECK(cli({"--experiment", "snr", "--trials", "0"}).code == 1);
    CHECK(cli({"--experiment", "snr", "--estimators", "MUSIC"}).code == 1);
    CHECK(cli({"--experiment", "snr", "--trials", "1", "--out", "/nonexistent/dir/r.csv", "--config",
               write_config("small.cfg", small_cfg)})
              .code == 1);
}
