// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

// Writes the procedural HDR corpus into a directory.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include <hueforge/errors.hpp>
#include <hueforge/image_io.hpp>

#include "hdr_writer.hpp"
#include "scenes.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Write the procedural HDR test corpus"};
    std::filesystem::path out = "corpus";
    std::size_t size = 256;
    app.add_option("--out", out, "Output directory");
    app.add_option("--size", size, "Edge length in pixels")->check(CLI::Range(8, 4096));
    CLI11_PARSE(app, argc, argv);

    using namespace hueforge;
    try {
        std::filesystem::create_directories(out);
        for (const auto& scene : corpus::make_scenes(size)) {
            io::Bytes bytes;
            switch (scene.encoding) {
            case corpus::Encoding::rgbe_flat: bytes = corpus::write_radiance_hdr(scene.image, corpus::RgbeLayout::flat); break;
            case corpus::Encoding::rgbe_rle: bytes = corpus::write_radiance_hdr(scene.image, corpus::RgbeLayout::rle); break;
            case corpus::Encoding::pfm: bytes = corpus::write_pfm(scene.image); break;
            }
            io::write_file(out / scene.file_name(), bytes);
            std::cout << (out / scene.file_name()).string() << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "make_corpus: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
