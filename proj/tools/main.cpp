#include "ignifront/cli.hpp"

int main(int argc, char** argv) { return ignifront::cli::run(argc, argv); }
