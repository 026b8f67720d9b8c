#include "sketchforge/cli.hpp"

int main(int argc, char** argv) { return sketchforge::run(argc, argv); }
